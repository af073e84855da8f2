#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phasevar/errors.hpp"
#include "phasevar/metrics.hpp"
#include "test_support.hpp"

namespace phasevar {
namespace {

using testing::random_field;

TEST(QError, Identity) {
    std::mt19937_64 rng(1);
    const ScalarField mu = random_field(GridSpec::pixels(9, 7), rng);
    EXPECT_EQ(q_error(mu, mu), 0.0);
}

TEST(QError, Opposite) {
    std::mt19937_64 rng(2);
    const ScalarField mu = random_field(GridSpec::pixels(9, 7), rng);
    ScalarField neg = mu;
    for (double& x : neg.values()) x = -x;
    EXPECT_NEAR(q_error(mu, neg), 1.0, 1e-15);
}

TEST(QError, OnesAgainstZeros) {
    const GridSpec g = GridSpec::pixels(4, 3);
    EXPECT_DOUBLE_EQ(q_error(ScalarField(g, 1.0), ScalarField(g, 0.0)), 1.0);
    EXPECT_EQ(q_error(ScalarField(g, 0.0), ScalarField(g, 0.0)), 0.0);
}

TEST(QError, GridMismatch) {
    EXPECT_THROW(q_error(ScalarField(GridSpec::pixels(3, 3)), ScalarField(GridSpec::pixels(3, 4))),
                 InvalidInput);
}

TEST(QError, BoundedSymmetricScaleInvariant) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int trial = 0; trial < 200; ++trial) {
        const GridSpec g = GridSpec::pixels(2 + trial % 9, 2 + trial % 5);
        const ScalarField mu = random_field(g, rng, -5, 5);
        const ScalarField nu = random_field(g, rng, -1, 3);
        const double q = q_error(mu, nu);
        EXPECT_GE(q, 0.0);
        EXPECT_LE(q, 1.0);
        EXPECT_EQ(q, q_error(nu, mu));
        const double s = scale(rng);
        ScalarField smu = mu, snu = nu;
        for (double& x : smu.values()) x *= s;
        for (double& x : snu.values()) x *= s;
        EXPECT_NEAR(q_error(smu, snu), q, 1e-12);
    }
}

TEST(SnrDb, ZeroNoiseIsInfinite) {
    std::mt19937_64 rng(4);
    const ScalarField s = random_field(GridSpec::pixels(5, 5), rng);
    EXPECT_TRUE(std::isinf(snr_db(s, s)));
    EXPECT_GT(snr_db(s, s), 0.0);
}

TEST(SnrDb, UnitRatioIsZeroDb) {
    const GridSpec g = GridSpec::pixels(2, 2);
    // signal variance sum: (1,-1,1,-1) -> 4; noise sum: (1,1,1,1) -> 4.
    const ScalarField s(g, {1.0, -1.0, 1.0, -1.0});
    const ScalarField y(g, {2.0, 0.0, 0.0, -2.0});
    EXPECT_NEAR(snr_db(s, y), 0.0, 1e-15);
}

TEST(MeanAlign, Properties) {
    std::mt19937_64 rng(5);
    const GridSpec g = GridSpec::pixels(11, 6);
    const ScalarField mu = random_field(g, rng);
    const ScalarField nu = random_field(g, rng, 2, 4);
    EXPECT_EQ(mean_align(mu, mu), mu);
    EXPECT_NEAR(mean_align(mu, nu).mean(), nu.mean(), 1e-12);
    ScalarField shifted = mu;
    for (double& x : shifted.values()) x += 17.25;
    EXPECT_NEAR(q_error(mean_align(shifted, mu), mu), 0.0, 1e-14);
}

}  // namespace
}  // namespace phasevar
