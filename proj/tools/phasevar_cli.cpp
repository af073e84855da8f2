// Command-line driver: synth, demodulate, baseline, benchmark, metrics.
//
// Exit codes: 0 success, 2 invalid input or malformed file, 3 solver
// divergence, 4 I/O failure, 1 anything else.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phasevar/errors.hpp"
#include "phasevar/image_io.hpp"
#include "phasevar/manifest.hpp"
#include "phasevar/pipeline.hpp"

namespace {

using namespace phasevar;

enum ExitCode { kOk = 0, kOther = 1, kInput = 2, kDiverged = 3, kIo = 4 };

// Manifest keys exposed as first-class flags; everything else goes through --set.
const std::vector<std::pair<std::string, std::string>> kFlagKeys = {
    {"generator", "wavefront | peaks | external"},
    {"width", "columns"},
    {"height", "rows"},
    {"snr_db", "target SNR in dB, or none"},
    {"noise_seed", "noise RNG seed"},
    {"method", "variational | poisson | lineintegral"},
    {"units", "pixel | domain spacing for differences"},
    {"lambda", "smoothing weight"},
    {"step", "step size, or auto"},
    {"delta1", "energy-change tolerance"},
    {"delta2", "iterate-change tolerance"},
    {"delta3", "gradient tolerance"},
    {"k_max", "iteration cap"},
    {"init", "random | zeros | lineintegral"},
    {"init_seed", "seed for random initialization"},
    {"accel", "nesterov | gradient_descent"},
    {"output_dir", "output directory"},
    {"input_ic", "I^c PFM for the external generator"},
    {"input_is", "I^s PFM for the external generator"},
    {"input_truth", "reference phase PFM (optional)"},
};

struct ManifestArgs {
    std::string config;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", config, "key = value manifest file");
        cmd->add_option("--set", sets, "override: key=value (repeatable)");
        for (const auto& [key, help] : kFlagKeys) {
            std::string flag = "--" + key;
            std::replace(flag.begin() + 2, flag.end(), '_', '-');
            cmd->add_option(flag, flags[key], help);
        }
    }

    RunManifest build(std::optional<Recovery> forced = {}) const {
        RunManifest m;
        if (!config.empty()) {
            const auto bytes = io::read_bytes(config);
            m = parse_manifest(std::string(bytes.begin(), bytes.end()));
        }
        if (auto it = flags.find("generator"); it != flags.end() && !it->second.empty()) {
            apply_override(m, "generator", it->second);
            if (config.empty()) set_default_domain(m);
        }
        for (const auto& [key, value] : flags) {
            if (key != "generator" && !value.empty()) apply_override(m, key, value);
        }
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidInput("--set expects key=value, got '" + kv + "'");
            apply_override(m, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (forced) m.method = *forced;
        return m;
    }
};

void print_recovery(const RecoveryResult& r, const RunManifest& m) {
    std::cout << "method " << to_string(m.method) << "  units " << to_string(m.units) << '\n';
    if (r.report) {
        std::cout << "iterations " << r.report->iterations << "  stop " << to_string(r.report->stop_reason)
                  << "  energy " << r.report->final_energy << "  wall " << r.report->wall_time << " s\n";
    }
    if (r.q_raw) {
        std::cout << "Q raw " << *r.q_raw << "  Q mean-aligned " << *r.q_aligned << "  (reported: "
                  << r.q_convention << ")\n";
    }
    std::cout << "outputs in " << m.output_dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational phase recovery from phase-shifted fringe pairs"};
    app.require_subcommand(1);

    ManifestArgs synth_args, demod_args, base_args, bench_args;
    auto* synth = app.add_subcommand("synth", "generate truth and fringe PFMs");
    synth_args.attach(synth);

    auto* demod = app.add_subcommand("demodulate", "recover the phase from a fringe pair");
    demod_args.attach(demod);

    auto* baseline = app.add_subcommand("baseline", "run a comparison method (poisson or lineintegral)");
    base_args.attach(baseline);

    auto* bench = app.add_subcommand("benchmark", "sweep the standard SNR grid and write benchmark.csv");
    bench_args.attach(bench);
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::vector<std::string> snr_list;
    bool repeat_noiseless = false;
    bench->add_option("--seeds", seeds, "noise seeds per row");
    bench->add_option("--snr-list", snr_list, "SNR rows (dB or 'inf'); default: standard grid");
    bench->add_flag("--repeat-noiseless", repeat_noiseless, "run every seed on the noiseless row too");

    auto* metrics = app.add_subcommand("metrics", "compare a phase PFM against a reference PFM");
    std::string estimate_path, reference_path;
    metrics->add_option("estimate", estimate_path, "estimated phase (PFM)")->required();
    metrics->add_option("reference", reference_path, "reference phase (PFM)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            const RunManifest m = synth_args.build();
            const SynthOutput out = cmd_synth(m);
            std::cout << "wrote " << out.directory.string() << "/{truth,ic,is}.pfm\n";
            if (out.snr_ic_db) {
                std::cout << "measured SNR I^c " << *out.snr_ic_db << " dB, I^s " << *out.snr_is_db << " dB\n";
            }
        } else if (*demod) {
            const RunManifest m = demod_args.build();
            print_recovery(cmd_demodulate(m), m);
        } else if (*baseline) {
            RunManifest m = base_args.build();
            if (m.method == Recovery::Variational) {
                m.method = Recovery::Poisson;
                if (base_args.flags.at("init").empty()) m.init = InitMode::Zeros;
            }
            print_recovery(cmd_demodulate(m), m);
        } else if (*bench) {
            BenchmarkSuite suite;
            suite.base = bench_args.build();
            suite.seeds = seeds;
            suite.repeat_noiseless = repeat_noiseless;
            if (snr_list.empty()) {
                suite.snr_db = standard_snr_grid(suite.base.generator);
            } else {
                for (const auto& s : snr_list) {
                    suite.snr_db.push_back(s == "inf" || s == "none" ? std::nullopt
                                                                     : std::optional(std::stod(s)));
                }
            }
            const auto rows = cmd_benchmark(suite);
            std::cout << benchmark_csv(rows, suite.base.method == Recovery::Variational ? "raw"
                                                                                        : "mean_aligned");
        } else if (*metrics) {
            const MetricsOutput out = cmd_metrics(estimate_path, reference_path);
            std::cout << "q_raw = " << io::format_double(out.q_raw) << "\nq_aligned = "
                      << io::format_double(out.q_aligned) << "\nsnr_db = " << io::format_double(out.snr_db)
                      << '\n';
        }
    } catch (const SolverDiverged& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDiverged;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == FormatError::Kind::Io ? kIo : kInput;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
    return kOk;
}
