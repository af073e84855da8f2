#include "phasevar/manifest.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "phasevar/errors.hpp"
#include "phasevar/image_io.hpp"

namespace phasevar {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw InvalidInput("manifest: '" + key + "' expects a number, got '" + v + "'");
    }
    return out;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw InvalidInput("manifest: '" + key + "' expects a non-negative integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw InvalidInput("manifest: '" + key + "' expects true/false, got '" + v + "'");
}

template <class Enum, std::size_t N>
Enum to_enum(const std::string& key, const std::string& v, const std::pair<const char*, Enum> (&table)[N]) {
    for (const auto& [name, value] : table) {
        if (v == name) return value;
    }
    throw InvalidInput("manifest: '" + key + "' has unknown value '" + v + "'");
}

constexpr std::pair<const char*, Generator> kGenerators[] = {
    {"wavefront", Generator::Wavefront}, {"peaks", Generator::Peaks}, {"external", Generator::External}};
constexpr std::pair<const char*, Recovery> kRecoveries[] = {
    {"variational", Recovery::Variational}, {"poisson", Recovery::Poisson},
    {"lineintegral", Recovery::LineIntegral}};
constexpr std::pair<const char*, Units> kUnits[] = {{"pixel", Units::Pixel}, {"domain", Units::Domain}};
constexpr std::pair<const char*, InitMode> kInits[] = {
    {"random", InitMode::Random}, {"zeros", InitMode::Zeros}, {"lineintegral", InitMode::LineIntegral}};
constexpr std::pair<const char*, Method> kMethods[] = {
    {"nesterov", Method::Nesterov}, {"gradient_descent", Method::GradientDescent}};
constexpr std::pair<const char*, WavefrontVariant> kVariants[] = {
    {"as_printed", WavefrontVariant::AsPrinted}, {"quartic_times_y", WavefrontVariant::QuarticTimesY}};

template <class Enum, std::size_t N>
const char* enum_name(Enum e, const std::pair<const char*, Enum> (&table)[N]) {
    for (const auto& [name, value] : table) {
        if (value == e) return name;
    }
    return "?";
}

}  // namespace

const char* to_string(Generator g) noexcept { return enum_name(g, kGenerators); }
const char* to_string(Recovery r) noexcept { return enum_name(r, kRecoveries); }
const char* to_string(Units u) noexcept { return enum_name(u, kUnits); }
const char* to_string(InitMode i) noexcept { return enum_name(i, kInits); }

GridSpec RunManifest::grid() const { return GridSpec::make(x_min, x_max, y_min, y_max, width, height); }

SolverConfig RunManifest::solver_config() const {
    SolverConfig cfg;
    cfg.lambda = lambda;
    cfg.step = step;
    cfg.delta1 = delta1;
    cfg.delta2 = delta2;
    cfg.delta3 = delta3;
    cfg.k_max = k_max;
    cfg.monitor_stride = monitor_stride;
    cfg.method = accel;
    cfg.restart = restart;
    cfg.init = init == InitMode::Zeros ? Initializer::zeros() : Initializer::random(init_seed);
    return cfg;
}

void set_default_domain(RunManifest& m) {
    const double half = m.generator == Generator::Peaks ? 2.3 : 1.0;
    m.x_min = m.y_min = -half;
    m.x_max = m.y_max = half;
}

void apply_override(RunManifest& m, const std::string& key, const std::string& value) {
    const std::string& v = value;
    if (key == "scenario") m.scenario = v;
    else if (key == "generator") m.generator = to_enum(key, v, kGenerators);
    else if (key == "width") m.width = to_unsigned(key, v);
    else if (key == "height") m.height = to_unsigned(key, v);
    else if (key == "x_min") m.x_min = to_double(key, v);
    else if (key == "x_max") m.x_max = to_double(key, v);
    else if (key == "y_min") m.y_min = to_double(key, v);
    else if (key == "y_max") m.y_max = to_double(key, v);
    else if (key == "wavefront_variant") m.variant = to_enum(key, v, kVariants);
    else if (key == "amplitude") m.amplitude = to_double(key, v);
    else if (key == "snr_db") m.snr_db = v == "none" ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "noise_seed") m.noise_seed = to_unsigned(key, v);
    else if (key == "method") m.method = to_enum(key, v, kRecoveries);
    else if (key == "units") m.units = to_enum(key, v, kUnits);
    else if (key == "lambda") m.lambda = to_double(key, v);
    else if (key == "step") m.step = v == "auto" ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "delta1") m.delta1 = to_double(key, v);
    else if (key == "delta2") m.delta2 = to_double(key, v);
    else if (key == "delta3") m.delta3 = to_double(key, v);
    else if (key == "k_max") m.k_max = to_unsigned(key, v);
    else if (key == "init") m.init = to_enum(key, v, kInits);
    else if (key == "init_seed") m.init_seed = to_unsigned(key, v);
    else if (key == "monitor_stride") m.monitor_stride = to_unsigned(key, v);
    else if (key == "accel") m.accel = to_enum(key, v, kMethods);
    else if (key == "restart") m.restart = to_bool(key, v);
    else if (key == "output_dir") m.output_dir = v;
    else if (key == "input_ic") m.input_ic = v;
    else if (key == "input_is") m.input_is = v;
    else if (key == "input_truth") m.input_truth = v;
    else if (key == "format_version") {
        m.format_version = static_cast<int>(to_unsigned(key, v));
        if (m.format_version != RunManifest::kFormatVersion) {
            throw InvalidInput("manifest: unsupported format_version " + v);
        }
    } else {
        throw InvalidInput("manifest: unknown key '" + key + "'");
    }
}

std::string render(const RunManifest& m) {
    using io::format_double;
    std::ostringstream os;
    os << "format_version = " << m.format_version << '\n'
       << "scenario = " << m.scenario << '\n'
       << "generator = " << to_string(m.generator) << '\n'
       << "width = " << m.width << '\n'
       << "height = " << m.height << '\n'
       << "x_min = " << format_double(m.x_min) << '\n'
       << "x_max = " << format_double(m.x_max) << '\n'
       << "y_min = " << format_double(m.y_min) << '\n'
       << "y_max = " << format_double(m.y_max) << '\n'
       << "wavefront_variant = " << enum_name(m.variant, kVariants) << '\n'
       << "amplitude = " << format_double(m.amplitude) << '\n'
       << "snr_db = " << (m.snr_db ? format_double(*m.snr_db) : "none") << '\n'
       << "noise_seed = " << m.noise_seed << '\n'
       << "method = " << to_string(m.method) << '\n'
       << "units = " << to_string(m.units) << '\n'
       << "lambda = " << format_double(m.lambda) << '\n'
       << "step = " << (m.step ? format_double(*m.step) : "auto") << '\n'
       << "delta1 = " << format_double(m.delta1) << '\n'
       << "delta2 = " << format_double(m.delta2) << '\n'
       << "delta3 = " << format_double(m.delta3) << '\n'
       << "k_max = " << m.k_max << '\n'
       << "init = " << to_string(m.init) << '\n'
       << "init_seed = " << m.init_seed << '\n'
       << "monitor_stride = " << m.monitor_stride << '\n'
       << "accel = " << to_string(m.accel) << '\n'
       << "restart = " << (m.restart ? "true" : "false") << '\n'
       << "output_dir = " << m.output_dir << '\n'
       << "input_ic = " << m.input_ic << '\n'
       << "input_is = " << m.input_is << '\n'
       << "input_truth = " << m.input_truth << '\n';
    return os.str();
}

RunManifest parse_manifest(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::istringstream in(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("manifest line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (!entries.emplace(key, value).second) {
            throw InvalidInput("manifest line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
    }

    RunManifest m;
    // The generator picks the default domain, so it goes first.
    if (auto it = entries.find("generator"); it != entries.end()) {
        apply_override(m, it->first, it->second);
        entries.erase(it);
    }
    set_default_domain(m);
    for (const auto& [key, value] : entries) apply_override(m, key, value);
    return m;
}

}  // namespace phasevar
