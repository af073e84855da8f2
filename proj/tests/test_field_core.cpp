#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phasevar/errors.hpp"
#include "phasevar/finite_difference.hpp"
#include "test_support.hpp"

namespace phasevar {
namespace {

using testing::random_field;
using testing::random_vector_field;
using testing::sample;

TEST(GridSpec, SpacingAndNodes) {
    const GridSpec g = GridSpec::make(-1.0, 1.0, 0.0, 3.0, 5, 4);
    EXPECT_DOUBLE_EQ(g.hx(), 0.5);
    EXPECT_DOUBLE_EQ(g.hy(), 1.0);
    EXPECT_DOUBLE_EQ(g.x(0), -1.0);
    EXPECT_DOUBLE_EQ(g.x(4), 1.0);
    EXPECT_DOUBLE_EQ(g.y(3), 3.0);
}

TEST(GridSpec, RejectsDegenerateGrids) {
    EXPECT_THROW(GridSpec::make(0, 1, 0, 1, 1, 5), InvalidInput);
    EXPECT_THROW(GridSpec::make(1, 1, 0, 1, 3, 3), InvalidInput);
    EXPECT_THROW(GridSpec::make(0, 1, 2, 1, 3, 3), InvalidInput);
}

TEST(ScalarField, RejectsWrongSampleCount) {
    const GridSpec g = GridSpec::pixels(3, 2);
    EXPECT_THROW(ScalarField(g, std::vector<double>(5)), InvalidInput);
}

TEST(GradHalf, ConstantFieldHasZeroGradient) {
    const ScalarField phi(GridSpec::make(0, 2, 0, 1, 7, 5), 3.25);
    const VectorField g = grad_half(phi);
    EXPECT_EQ(g.u.max_abs(), 0.0);
    EXPECT_EQ(g.v.max_abs(), 0.0);
}

TEST(GradHalf, LinearFieldIsExact) {
    const GridSpec g = GridSpec::make(-1, 1, -1, 1, 9, 6);
    const VectorField d = grad_half(sample(g, [](double x, double) { return 2.0 * x; }));
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i + 1 < g.m; ++i) EXPECT_NEAR(d.u(i, j), 2.0, 1e-13);
        EXPECT_EQ(d.u(g.m - 1, j), 0.0);  // outer face: zero ghost flux
    }
    EXPECT_LT(d.v.max_abs(), 1e-13);
}

TEST(GradHalf, QuadraticOnThreeNodes) {
    const GridSpec g = GridSpec::make(0, 1, 0, 1, 3, 2);
    const VectorField d = grad_half(sample(g, [](double x, double) { return x * x; }));
    EXPECT_DOUBLE_EQ(d.u(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(d.u(1, 0), 1.5);
}

TEST(GradHalf, RejectsNonFinite) {
    ScalarField phi(GridSpec::pixels(3, 3));
    phi(1, 1) = std::nan("");
    EXPECT_THROW(grad_half(phi), InvalidInput);
}

TEST(DivHalf, ZeroField) {
    const VectorField v(GridSpec::pixels(4, 4));
    EXPECT_EQ(div_half(v).max_abs(), 0.0);
}

TEST(DivHalf, ShapeMismatch) {
    VectorField v(GridSpec::pixels(4, 4));
    v.v = ScalarField(GridSpec::pixels(4, 5));
    EXPECT_THROW(div_half(v), InvalidInput);
}

TEST(DivHalf, NegativeAdjointOfGradient) {
    std::mt19937_64 rng(7);
    const GridSpec g = GridSpec::make(-1, 1, -0.5, 1.5, 8, 8);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField phi = random_field(g, rng);
        const VectorField v = random_vector_field(g, rng);
        const double lhs = dot(grad_half(phi), v);
        const double rhs = -dot(phi, div_half(v));
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(std::abs(lhs), 1.0));
    }
}

TEST(DivHalf, LaplacianOfParaboloidInterior) {
    const GridSpec g = GridSpec::make(-1, 1, -1, 1, 33, 33);
    const ScalarField lap = laplacian(sample(g, [](double x, double y) { return x * x + y * y; }));
    for (std::size_t j = 1; j + 1 < g.n; ++j)
        for (std::size_t i = 1; i + 1 < g.m; ++i) EXPECT_NEAR(lap(i, j), 4.0, 1e-10);
}

// Smooth non-polynomial field: the 5-point stencil error is O(h^2).
TEST(DivHalf, LaplacianConvergesQuadratically) {
    auto f = [](double x, double y) { return std::sin(1.3 * x) * std::cos(0.7 * y) + x * x * y; };
    auto exact = [](double x, double y) {
        return -(1.69 + 0.49) * std::sin(1.3 * x) * std::cos(0.7 * y) + 2.0 * y;
    };
    std::vector<double> errors;
    for (std::size_t m : {17u, 33u, 65u, 129u}) {
        const GridSpec g = GridSpec::make(-1, 1, -1, 1, m, m);
        const ScalarField lap = laplacian(sample(g, f));
        double err = 0.0;
        for (std::size_t j = 1; j + 1 < g.n; ++j)
            for (std::size_t i = 1; i + 1 < g.m; ++i)
                err = std::max(err, std::abs(lap(i, j) - exact(g.x(i), g.y(j))));
        errors.push_back(err);
    }
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double slope = std::log2(errors[k - 1] / errors[k]);
        EXPECT_GE(slope, 1.9) << "refinement " << k;
    }
}

TEST(ApplyFluxBc, NeumannClampZeroesOuterFaces) {
    std::mt19937_64 rng(3);
    const GridSpec g = GridSpec::pixels(5, 5);
    const VectorField v = random_vector_field(g, rng);
    const VectorField out = apply_flux_bc(v, std::nullopt);
    for (std::size_t j = 0; j < g.n; ++j) EXPECT_EQ(out.u(g.m - 1, j), 0.0);
    for (std::size_t i = 0; i < g.m; ++i) EXPECT_EQ(out.v(i, g.n - 1), 0.0);
}

TEST(ApplyFluxBc, DataClampMatchesTargetOnBoundary) {
    std::mt19937_64 rng(4);
    const GridSpec g = GridSpec::make(0, 1, 0, 2, 6, 5);
    const VectorField target = random_vector_field(g, rng);
    const VectorField out = apply_flux_bc(grad_half(random_field(g, rng)), target);
    for (std::size_t j = 0; j < g.n; ++j) EXPECT_EQ(out.u(g.m - 1, j) - target.u(g.m - 1, j), 0.0);
    for (std::size_t i = 0; i < g.m; ++i) EXPECT_EQ(out.v(i, g.n - 1) - target.v(i, g.n - 1), 0.0);
}

TEST(ApplyFluxBc, InteriorUnchanged) {
    std::mt19937_64 rng(5);
    const GridSpec g = GridSpec::pixels(5, 5);
    const VectorField v = random_vector_field(g, rng);
    const VectorField out = apply_flux_bc(v, random_vector_field(g, rng));
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i + 1 < g.m; ++i) EXPECT_EQ(out.u(i, j), v.u(i, j));
    for (std::size_t j = 0; j + 1 < g.n; ++j)
        for (std::size_t i = 0; i < g.m; ++i) EXPECT_EQ(out.v(i, j), v.v(i, j));
}

TEST(ApplyFluxBc, ShapeMismatch) {
    const VectorField v(GridSpec::pixels(4, 4));
    const VectorField other(GridSpec::pixels(5, 4));
    EXPECT_THROW(apply_flux_bc(v, other), InvalidInput);
}

}  // namespace
}  // namespace phasevar
