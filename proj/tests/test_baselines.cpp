#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasevar/baselines.hpp"
#include "phasevar/demodulation.hpp"
#include "phasevar/errors.hpp"
#include "phasevar/metrics.hpp"
#include "phasevar/synthesis.hpp"
#include "test_support.hpp"

namespace phasevar {
namespace {

using testing::sample;

TEST(IntegrateGradient, ZeroField) {
    const GridSpec g = GridSpec::pixels(7, 5);
    EXPECT_EQ(integrate_gradient(VectorField(g), {3, 2}).max_abs(), 0.0);
}

TEST(IntegrateGradient, ConstantGradient) {
    const GridSpec g = GridSpec::make(0, 3, 0, 2, 13, 9);
    const VectorField grad(ScalarField(g, 2.0), ScalarField(g, 0.0));
    const ScalarField phi = integrate_gradient(grad, {0, 0});
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i < g.m; ++i) EXPECT_NEAR(phi(i, j), 2.0 * g.x(i), 1e-12);
}

// Trapezoidal integration is exact for affine phases wherever the anchor sits.
TEST(IntegrateGradient, AffineExactForAnyAnchor) {
    const GridSpec g = GridSpec::make(-1, 1, -2, 1, 11, 14);
    const VectorField grad(ScalarField(g, 0.7), ScalarField(g, -1.3));
    for (GridIndex a : {GridIndex{0, 0}, GridIndex{5, 7}, GridIndex{10, 13}, GridIndex{3, 12}}) {
        const ScalarField phi = integrate_gradient(grad, a);
        EXPECT_EQ(phi(a.i, a.j), 0.0);
        for (std::size_t j = 0; j < g.n; ++j) {
            for (std::size_t i = 0; i < g.m; ++i) {
                const double expect = 0.7 * (g.x(i) - g.x(a.i)) - 1.3 * (g.y(j) - g.y(a.j));
                EXPECT_NEAR(phi(i, j), expect, 1e-12);
            }
        }
    }
}

TEST(IntegrateGradient, RejectsBadInput) {
    const GridSpec g = GridSpec::pixels(4, 4);
    EXPECT_THROW(integrate_gradient(VectorField(g), {4, 0}), InvalidInput);
    VectorField bad(g);
    bad.u(1, 1) = NAN;
    EXPECT_THROW(integrate_gradient(bad, {0, 0}), InvalidInput);
}

TEST(LineIntegralEstimate, OffsetMatchesWrappedPhaseAtCentre) {
    const GridSpec g = GridSpec::make(-2.3, 2.3, -2.3, 2.3, 161, 121);
    const ScalarField truth = peaks_phase(g);
    const FringeSet f = make_fringes(truth, 1.0, {});
    const ScalarField est = line_integral_estimate(f, gradient_field(f).field);
    EXPECT_NEAR(est(80, 60), wrap_angle(truth(80, 60)), 1e-12);
    EXPECT_LT(q_error(mean_align(est, truth), truth), 0.02);
}

SolverConfig tight() {
    SolverConfig cfg;
    cfg.init = Initializer::zeros();
    cfg.delta1 = cfg.delta2 = cfg.delta3 = 1e-10;
    cfg.k_max = 20000;
    return cfg;
}

TEST(PoissonUnwrap, RecoversPlane) {
    const GridSpec g = GridSpec::pixels(40, 30);
    const ScalarField truth = sample(g, [](double x, double y) { return 0.9 * x + 0.4 * y; });
    const SolverResult r = poisson_unwrap(wrapped_phase(make_fringes(truth, 1.0, {})).phase, tight());
    EXPECT_LE(q_error(mean_align(r.phase, truth), truth), 1e-6);
    EXPECT_NEAR(r.phase.mean(), 0.0, 1e-12);
}

TEST(PoissonUnwrap, ZeroInputGivesZero) {
    const GridSpec g = GridSpec::pixels(9, 9);
    const SolverResult r = poisson_unwrap(ScalarField(g), tight());
    EXPECT_LT(r.phase.max_abs(), 1e-12);
}

TEST(PoissonUnwrap, InvariantToConstantShift) {
    const GridSpec g = GridSpec::pixels(30, 20);
    const ScalarField truth = sample(g, [](double x, double y) { return 0.02 * (x - 15) * (x - 15) - 0.1 * y; });
    const ScalarField psi = wrapped_phase(make_fringes(truth, 1.0, {})).phase;
    ScalarField shifted(g);
    for (std::size_t k = 0; k < g.size(); ++k) shifted.values()[k] = wrap_angle(psi.values()[k] + 1.1);
    const SolverResult a = poisson_unwrap(psi, tight());
    const SolverResult b = poisson_unwrap(shifted, tight());
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(a.phase.values()[k], b.phase.values()[k], 1e-6);
}

// On noiseless smooth data Poisson and the line integral agree up to an offset.
TEST(PoissonUnwrap, AgreesWithLineIntegral) {
    const GridSpec g = GridSpec::pixels(48, 36);
    const ScalarField truth = sample(g, [](double x, double y) { return 0.02 * x - 0.015 * y; });
    const FringeSet f = make_fringes(truth, 1.0, {});
    const SolverResult r = poisson_unwrap(wrapped_phase(f).phase, tight());
    const ScalarField li = integrate_gradient(gradient_field(f).field, {24, 18});
    EXPECT_LE(q_error(mean_align(li, r.phase), r.phase), 1e-4);
}

TEST(PoissonUnwrap, RejectsUnwrappedInput) {
    const GridSpec g = GridSpec::pixels(5, 5);
    ScalarField psi(g);
    psi(2, 2) = 4.0;
    EXPECT_THROW(poisson_unwrap(psi, tight()), InvalidInput);
}

TEST(WrappedDifferences, FoldsJumps) {
    const GridSpec g = GridSpec::pixels(3, 2);
    ScalarField psi(g);
    psi(0, 0) = 3.0;
    psi(1, 0) = -3.0;
    const VectorField d = wrapped_differences(psi);
    EXPECT_NEAR(d.u(0, 0), 2 * std::numbers::pi - 6.0, 1e-15);
    EXPECT_EQ(d.u(2, 0), 0.0);
    EXPECT_EQ(d.v(0, 1), 0.0);
}

}  // namespace
}  // namespace phasevar
