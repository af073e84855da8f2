#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "phasevar/field.hpp"
#include "phasevar/solver.hpp"
#include "phasevar/synthesis.hpp"

namespace phasevar {

enum class Generator { Wavefront, Peaks, External };
enum class Recovery { Variational, Poisson, LineIntegral };
enum class Units { Pixel, Domain };
enum class InitMode { Random, Zeros, LineIntegral };

/**
 * Everything needed to reproduce one run. Stored as flat "key = value" text;
 * '#' starts a comment. render() emits every key, so parse(render(m)) == m.
 */
struct RunManifest {
    static constexpr int kFormatVersion = 1;

    std::string scenario = "default";
    Generator generator = Generator::Wavefront;
    std::size_t width = 640;
    std::size_t height = 480;
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    WavefrontVariant variant = WavefrontVariant::AsPrinted;
    double amplitude = 1.0;
    std::optional<double> snr_db;
    std::uint64_t noise_seed = 1;

    Recovery method = Recovery::Variational;
    Units units = Units::Pixel;
    double lambda = 1.0;
    std::optional<double> step;
    double delta1 = 1e-7, delta2 = 1e-7, delta3 = 1e-7;
    std::size_t k_max = 15000;
    InitMode init = InitMode::Random;
    std::uint64_t init_seed = 12345;
    std::size_t monitor_stride = 50;
    Method accel = Method::Nesterov;
    bool restart = false;

    std::string output_dir = "out";
    std::string input_ic;     ///< external generator: PFM paths
    std::string input_is;
    std::string input_truth;  ///< optional reference phase for Q
    int format_version = kFormatVersion;

    GridSpec grid() const;
    SolverConfig solver_config() const;

    bool operator==(const RunManifest&) const = default;
};

std::string render(const RunManifest& manifest);
/// Throws InvalidInput (with the line number) on unknown keys or bad values.
RunManifest parse_manifest(const std::string& text);

/// Apply one "key=value" override, as given on the command line.
void apply_override(RunManifest& manifest, const std::string& key, const std::string& value);

/// Default domain for a generator: [-1,1]^2 for the wavefront, [-2.3,2.3]^2 for peaks.
void set_default_domain(RunManifest& manifest);

const char* to_string(Generator g) noexcept;
const char* to_string(Recovery r) noexcept;
const char* to_string(Units u) noexcept;
const char* to_string(InitMode i) noexcept;

}  // namespace phasevar
