#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phasevar/field.hpp"
#include "phasevar/fringe_set.hpp"
#include "phasevar/manifest.hpp"
#include "phasevar/solver.hpp"

namespace phasevar {

/// Fringes for a manifest plus the reference phase when one is known.
struct Scenario {
    FringeSet fringes;
    std::optional<ScalarField> truth;
    std::optional<double> measured_snr_db;  ///< mean over I^c and I^s
};

/// Synthesizes (wavefront/peaks) or loads (external) the manifest's fringes.
Scenario build_scenario(const RunManifest& manifest);

struct RecoveryResult {
    ScalarField phase;                    ///< on the manifest's domain grid
    std::optional<SolverReport> report;   ///< absent for the line-integral method
    std::size_t degenerate_samples = 0;   ///< gradient samples with b ~ 0
    std::optional<double> q_raw;          ///< Q against truth, no alignment
    std::optional<double> q_aligned;      ///< Q after mean alignment
    /// "raw" for the variational method, "mean_aligned" for the baselines.
    std::string q_convention;

    double q() const { return q_convention == "raw" ? q_raw.value() : q_aligned.value(); }
};

/// Runs the manifest's recovery method on in-memory data. No files touched.
RecoveryResult recover(const Scenario& scenario, const RunManifest& manifest);

struct SynthOutput {
    std::filesystem::path directory;
    std::optional<double> snr_ic_db;
    std::optional<double> snr_is_db;
};

/// Writes truth.pfm, ic.pfm, is.pfm, manifest.txt and synth_report.json.
SynthOutput cmd_synth(const RunManifest& manifest);

/**
 * Writes phase.pfm, phase.pgm (+ .txt mapping), abs_error.pfm when a
 * reference exists, report.json, iterations.csv and manifest.txt.
 */
RecoveryResult cmd_demodulate(const RunManifest& manifest);

struct BenchmarkRow {
    std::optional<double> target_snr_db;
    std::vector<double> measured_snr_db;
    std::vector<std::size_t> iterations;
    std::vector<double> q;
    std::size_t failures = 0;
    std::string error;

    double q_mean() const;
    double q_sd() const;
    double snr_mean() const;
    double iterations_mean() const;
};

struct BenchmarkSuite {
    RunManifest base;  ///< generator, solver settings, output_dir
    std::vector<std::optional<double>> snr_db;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    /// Noiseless rows are deterministic apart from init; run them once when false.
    bool repeat_noiseless = false;
};

/// Published SNR grid for each synthetic generator (nullopt = noiseless).
std::vector<std::optional<double>> standard_snr_grid(Generator generator);

/// One row per SNR value; failed seeds are counted, the suite continues.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkSuite& suite);

/// CSV: snr_target,snr_measured,iterations,q_mean,q_sd,runs,failures,q_convention
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, const std::string& q_convention);

/// run_benchmark + benchmark.csv and manifest.txt in base.output_dir.
std::vector<BenchmarkRow> cmd_benchmark(const BenchmarkSuite& suite);

struct MetricsOutput {
    double q_raw;
    double q_aligned;
    double snr_db;
};

/// Compare a result field against a reference field (both PFM).
MetricsOutput cmd_metrics(const std::filesystem::path& estimate, const std::filesystem::path& reference);

}  // namespace phasevar
