#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "phasevar/image_io.hpp"
#include "phasevar/metrics.hpp"
#include "phasevar/pipeline.hpp"

namespace phasevar {
namespace {

namespace fs = std::filesystem;

class Pipeline : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                ("phasevar_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    RunManifest small_peaks(const std::string& sub) const {
        RunManifest m = parse_manifest("generator = peaks\nwidth = 64\nheight = 56\n");
        m.output_dir = (root_ / sub).string();
        return m;
    }

    fs::path root_;
};

TEST_F(Pipeline, SynthIsDeterministic) {
    RunManifest a = small_peaks("a"), b = small_peaks("b");
    a.snr_db = b.snr_db = 20.0;
    a.noise_seed = b.noise_seed = 7;
    const SynthOutput out = cmd_synth(a);
    cmd_synth(b);
    ASSERT_TRUE(out.snr_ic_db && out.snr_is_db);
    EXPECT_NEAR(*out.snr_ic_db, 20.0, 1.0);
    for (const char* name : {"truth.pfm", "ic.pfm", "is.pfm", "synth_report.json"}) {
        EXPECT_EQ(io::read_bytes(root_ / "a" / name), io::read_bytes(root_ / "b" / name)) << name;
    }
    EXPECT_EQ(parse_manifest([&] {
                  auto bytes = io::read_bytes(root_ / "a" / "manifest.txt");
                  return std::string(bytes.begin(), bytes.end());
              }()),
              a);
}

TEST_F(Pipeline, DemodulateWritesArtifacts) {
    const RunManifest m = small_peaks("d");
    const RecoveryResult r = cmd_demodulate(m);
    ASSERT_TRUE(r.report && r.q_raw);
    EXPECT_LT(r.q(), 0.03);
    for (const char* name :
         {"phase.pfm", "phase.pgm", "phase.pgm.txt", "abs_error.pfm", "report.json", "iterations.csv", "manifest.txt"}) {
        EXPECT_TRUE(fs::exists(root_ / "d" / name)) << name;
    }
    const ScalarField phase = io::read_pfm(root_ / "d" / "phase.pfm", m.grid());
    for (std::size_t k = 0; k < phase.size(); ++k) {
        EXPECT_EQ(phase.values()[k], static_cast<float>(r.phase.values()[k]));
    }
}

TEST_F(Pipeline, ExternalMatchesInMemory) {
    RunManifest synth = small_peaks("s");
    synth.snr_db = 25.0;
    cmd_synth(synth);

    RunManifest ext = synth;
    ext.generator = Generator::External;
    ext.input_ic = (root_ / "s" / "ic.pfm").string();
    ext.input_is = (root_ / "s" / "is.pfm").string();
    ext.input_truth = (root_ / "s" / "truth.pfm").string();
    ext.output_dir = (root_ / "e").string();
    const RecoveryResult from_files = cmd_demodulate(ext);

    // Same fringes rounded through float32 in memory.
    Scenario sc = build_scenario(synth);
    ScalarField ic = sc.fringes.ic, is = sc.fringes.is, truth = *sc.truth;
    for (double& x : ic.values()) x = static_cast<float>(x);
    for (double& x : is.values()) x = static_cast<float>(x);
    for (double& x : truth.values()) x = static_cast<float>(x);
    Scenario rounded{FringeSet::from_quadrature(ic, is), truth, std::nullopt};
    const RecoveryResult in_memory = recover(rounded, synth);

    EXPECT_EQ(from_files.phase, in_memory.phase);
    EXPECT_EQ(from_files.report->iterations, in_memory.report->iterations);
    EXPECT_EQ(*from_files.q_raw, *in_memory.q_raw);
}

TEST_F(Pipeline, BaselineMethods) {
    RunManifest m = small_peaks("p");
    m.method = Recovery::Poisson;
    m.init = InitMode::Zeros;
    const RecoveryResult p = recover(build_scenario(m), m);
    EXPECT_EQ(p.q_convention, "mean_aligned");
    EXPECT_LT(p.q(), 0.01);

    m.method = Recovery::LineIntegral;
    const RecoveryResult l = recover(build_scenario(m), m);
    EXPECT_FALSE(l.report);
    EXPECT_LT(l.q(), 0.05);
}

TEST_F(Pipeline, BenchmarkCountsFailures) {
    BenchmarkSuite suite;
    suite.base = small_peaks("bench");
    suite.base.step = 1e6;
    suite.snr_db = {std::nullopt, 20.0};
    const auto rows = cmd_benchmark(suite);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].failures, 1u);
    EXPECT_EQ(rows[1].failures, 3u);
    EXPECT_TRUE(rows[1].q.empty());
    EXPECT_FALSE(rows[1].error.empty());
    const auto csv = io::read_bytes(root_ / "bench" / "benchmark.csv");
    EXPECT_NE(std::string(csv.begin(), csv.end()).find("20,nan,nan,nan,0,0,3,raw"), std::string::npos);
}

TEST_F(Pipeline, BenchmarkRowsAggregateSeeds) {
    BenchmarkSuite suite;
    suite.base = small_peaks("bench");
    suite.snr_db = {30.0};
    const auto rows = run_benchmark(suite);
    ASSERT_EQ(rows[0].q.size(), 3u);
    EXPECT_EQ(rows[0].failures, 0u);
    EXPECT_NEAR(rows[0].snr_mean(), 30.0, 1.0);
    EXPECT_GT(rows[0].q_sd(), 0.0);
    EXPECT_LT(rows[0].q_mean(), 0.02);
}

TEST_F(Pipeline, MetricsCommand) {
    const RunManifest m = small_peaks("m");
    cmd_synth(m);
    const MetricsOutput same = cmd_metrics(root_ / "m" / "truth.pfm", root_ / "m" / "truth.pfm");
    EXPECT_EQ(same.q_raw, 0.0);
    EXPECT_TRUE(std::isinf(same.snr_db));
}

}  // namespace
}  // namespace phasevar
