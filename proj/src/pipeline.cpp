#include "phasevar/pipeline.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "phasevar/baselines.hpp"
#include "phasevar/demodulation.hpp"
#include "phasevar/errors.hpp"
#include "phasevar/image_io.hpp"
#include "phasevar/metrics.hpp"
#include "phasevar/synthesis.hpp"

namespace phasevar {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw FormatError(FormatError::Kind::Io, 0, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

Scenario build_scenario(const RunManifest& manifest) {
    const GridSpec grid = manifest.grid();
    Scenario out;
    if (manifest.generator == Generator::External) {
        if (manifest.input_ic.empty() || manifest.input_is.empty()) {
            throw InvalidInput("external generator needs input_ic and input_is");
        }
        ScalarField ic = io::read_pfm(manifest.input_ic, grid);
        ScalarField is = io::read_pfm(manifest.input_is, grid);
        out.fringes = FringeSet::from_quadrature(std::move(ic), std::move(is),
                                                 "external " + manifest.input_ic + " " + manifest.input_is);
        if (!manifest.input_truth.empty()) out.truth = io::read_pfm(manifest.input_truth, grid);
        return out;
    }

    ScalarField truth = manifest.generator == Generator::Wavefront ? wavefront_phase(grid, manifest.variant)
                                                                    : peaks_phase(grid);
    const NoiseSpec noise{manifest.snr_db, manifest.noise_seed};
    out.fringes = make_fringes(truth, manifest.amplitude, noise);
    if (manifest.snr_db) {
        const FringeSet clean = make_fringes(truth, manifest.amplitude, NoiseSpec{});
        out.measured_snr_db =
            0.5 * (snr_db(clean.ic, out.fringes.ic) + snr_db(clean.is, out.fringes.is));
    } else {
        out.measured_snr_db = std::numeric_limits<double>::infinity();
    }
    out.truth = std::move(truth);
    return out;
}

RecoveryResult recover(const Scenario& scenario, const RunManifest& manifest) {
    const GridSpec domain = scenario.fringes.grid();
    const FringeSet fringes =
        manifest.units == Units::Pixel ? scenario.fringes.on_pixel_grid() : scenario.fringes;
    const GradientEstimate gradient = gradient_field(fringes);

    RecoveryResult out;
    out.degenerate_samples = gradient.degenerate_count;
    out.q_convention = manifest.method == Recovery::Variational ? "raw" : "mean_aligned";

    SolverConfig cfg = manifest.solver_config();
    if (manifest.init == InitMode::LineIntegral) {
        cfg.init = Initializer::from(line_integral_estimate(fringes, gradient.field));
    }

    switch (manifest.method) {
        case Recovery::Variational: {
            SolverResult r = minimize(fringes, gradient.field, cfg);
            out.phase = r.phase.regridded(domain);
            out.report = std::move(r.report);
            break;
        }
        case Recovery::Poisson: {
            SolverResult r = poisson_unwrap(wrapped_phase(fringes).phase, cfg);
            out.phase = r.phase.regridded(domain);
            out.report = std::move(r.report);
            break;
        }
        case Recovery::LineIntegral: {
            const GridIndex centre{domain.m / 2, domain.n / 2};
            out.phase = integrate_gradient(gradient.field, centre).regridded(domain);
            break;
        }
    }
    if (scenario.truth) {
        out.q_raw = q_error(out.phase, *scenario.truth);
        out.q_aligned = q_error(mean_align(out.phase, *scenario.truth), *scenario.truth);
    }
    return out;
}

SynthOutput cmd_synth(const RunManifest& manifest) {
    if (manifest.generator == Generator::External) throw InvalidInput("synth needs wavefront or peaks");
    const Scenario sc = build_scenario(manifest);
    const fs::path dir = manifest.output_dir;
    ensure_directory(dir);
    io::write_pfm(dir / "truth.pfm", *sc.truth);
    io::write_pfm(dir / "ic.pfm", sc.fringes.ic);
    io::write_pfm(dir / "is.pfm", sc.fringes.is);
    io::write_text(dir / "manifest.txt", render(manifest));

    SynthOutput out{dir, std::nullopt, std::nullopt};
    if (manifest.snr_db) {
        const FringeSet clean = make_fringes(*sc.truth, manifest.amplitude, NoiseSpec{});
        out.snr_ic_db = snr_db(clean.ic, sc.fringes.ic);
        out.snr_is_db = snr_db(clean.is, sc.fringes.is);
    }
    json report;
    report["scenario"] = manifest.scenario;
    report["generator"] = to_string(manifest.generator);
    report["width"] = manifest.width;
    report["height"] = manifest.height;
    report["target_snr_db"] = number_or_null(manifest.snr_db);
    report["measured_snr_ic_db"] = number_or_null(out.snr_ic_db);
    report["measured_snr_is_db"] = number_or_null(out.snr_is_db);
    report["noise_seed"] = manifest.noise_seed;
    report["provenance"] = sc.fringes.provenance;
    io::write_text(dir / "synth_report.json", report.dump(2) + "\n");
    return out;
}

RecoveryResult cmd_demodulate(const RunManifest& manifest) {
    const Scenario sc = build_scenario(manifest);
    RecoveryResult result = recover(sc, manifest);

    const fs::path dir = manifest.output_dir;
    ensure_directory(dir);
    io::write_pfm(dir / "phase.pfm", result.phase);
    io::write_pgm_preview(dir / "phase.pgm", result.phase);
    if (sc.truth) {
        ScalarField diff(result.phase.grid());
        auto d = diff.values();
        const ScalarField& ref = *sc.truth;
        const ScalarField cmp =
            result.q_convention == "raw" ? result.phase : mean_align(result.phase, ref);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::abs(cmp.values()[k] - ref.values()[k]);
        io::write_pfm(dir / "abs_error.pfm", diff);
    }
    io::write_text(dir / "manifest.txt", render(manifest));

    // Wall time is left out so every file is a pure function of the manifest.
    json report;
    report["scenario"] = manifest.scenario;
    report["method"] = to_string(manifest.method);
    report["units"] = to_string(manifest.units);
    report["provenance"] = sc.fringes.provenance;
    report["measured_snr_db"] = number_or_null(sc.measured_snr_db);
    report["degenerate_samples"] = result.degenerate_samples;
    if (result.report) {
        const SolverReport& r = *result.report;
        report["accel"] = to_string(r.method);
        report["lambda"] = manifest.method == Recovery::Variational ? manifest.lambda : 0.0;
        report["iterations"] = r.iterations;
        report["stop_reason"] = to_string(r.stop_reason);
        report["initial_energy"] = r.initial_energy;
        report["final_energy"] = r.final_energy;
        report["step_size_used"] = r.step_size_used;
        report["backoffs"] = r.backoffs;
        io::write_text(dir / "iterations.csv", r.trace_csv());
    }
    report["q_convention"] = result.q_convention;
    report["q_raw"] = number_or_null(result.q_raw);
    report["q_aligned"] = number_or_null(result.q_aligned);
    report["q"] = result.q_raw ? json(result.q()) : json(nullptr);
    io::write_text(dir / "report.json", report.dump(2) + "\n");
    return result;
}

double BenchmarkRow::q_mean() const {
    if (q.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(q.size());
}

double BenchmarkRow::q_sd() const {
    if (q.size() < 2) return 0.0;
    const double mu = q_mean();
    double acc = 0.0;
    for (double x : q) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(q.size() - 1));
}

double BenchmarkRow::snr_mean() const {
    if (measured_snr_db.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(measured_snr_db.begin(), measured_snr_db.end(), 0.0) /
           static_cast<double>(measured_snr_db.size());
}

double BenchmarkRow::iterations_mean() const {
    if (iterations.empty()) return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    for (auto k : iterations) sum += static_cast<double>(k);
    return sum / static_cast<double>(iterations.size());
}

std::vector<std::optional<double>> standard_snr_grid(Generator generator) {
    switch (generator) {
        case Generator::Wavefront: return {std::nullopt, 39.97, 27.98, 21.08};
        case Generator::Peaks: return {std::nullopt, 40.26, 28.22, 21.22, 14.44, 12.72};
        case Generator::External: break;
    }
    throw InvalidInput("no standard SNR grid for external data");
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSuite& suite) {
    if (suite.seeds.empty()) throw InvalidInput("benchmark needs at least one seed");
    std::vector<BenchmarkRow> rows;
    for (const auto& snr : suite.snr_db) {
        BenchmarkRow row;
        row.target_snr_db = snr;
        const std::size_t runs = (snr || suite.repeat_noiseless) ? suite.seeds.size() : 1;
        for (std::size_t s = 0; s < runs; ++s) {
            RunManifest m = suite.base;
            m.snr_db = snr;
            m.noise_seed = suite.seeds[s];
            m.init_seed = suite.base.init_seed + suite.seeds[s];
            try {
                const Scenario sc = build_scenario(m);
                const RecoveryResult r = recover(sc, m);
                row.measured_snr_db.push_back(sc.measured_snr_db.value_or(
                    std::numeric_limits<double>::quiet_NaN()));
                row.iterations.push_back(r.report ? r.report->iterations : 0);
                row.q.push_back(r.q());
            } catch (const std::exception& e) {
                ++row.failures;
                row.error = e.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, const std::string& q_convention) {
    using io::format_double;
    io::CsvTable table({"snr_target_db", "snr_measured_db", "iterations", "q_mean", "q_sd", "runs",
                        "failures", "q_convention"});
    for (const auto& r : rows) {
        table.add_row({r.target_snr_db ? format_double(*r.target_snr_db) : "inf",
                       format_double(r.snr_mean()), format_double(r.iterations_mean()),
                       format_double(r.q_mean()), format_double(r.q_sd()), std::to_string(r.q.size()),
                       std::to_string(r.failures), q_convention});
    }
    return table.render();
}

std::vector<BenchmarkRow> cmd_benchmark(const BenchmarkSuite& suite) {
    auto rows = run_benchmark(suite);
    const fs::path dir = suite.base.output_dir;
    ensure_directory(dir);
    const std::string convention = suite.base.method == Recovery::Variational ? "raw" : "mean_aligned";
    io::write_text(dir / "benchmark.csv", benchmark_csv(rows, convention));
    io::write_text(dir / "manifest.txt", render(suite.base));
    return rows;
}

MetricsOutput cmd_metrics(const fs::path& estimate, const fs::path& reference) {
    const ScalarField ref = io::read_pfm(reference);
    const ScalarField est = io::read_pfm(estimate, ref.grid());
    return {q_error(est, ref), q_error(mean_align(est, ref), ref), snr_db(ref, est)};
}

}  // namespace phasevar
