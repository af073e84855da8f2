#include "phasevar/demodulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phasevar {

namespace {

// d/dx at node (i,j): central inside, one-sided on the edges.
double ddx(const ScalarField& f, std::size_t i, std::size_t j, double inv_h) {
    const std::size_t m = f.cols();
    if (i == 0) return (f(1, j) - f(0, j)) * inv_h;
    if (i + 1 == m) return (f(m - 1, j) - f(m - 2, j)) * inv_h;
    return (f(i + 1, j) - f(i - 1, j)) * (0.5 * inv_h);
}

double ddy(const ScalarField& f, std::size_t i, std::size_t j, double inv_h) {
    const std::size_t n = f.rows();
    if (j == 0) return (f(i, 1) - f(i, 0)) * inv_h;
    if (j + 1 == n) return (f(i, n - 1) - f(i, n - 2)) * inv_h;
    return (f(i, j + 1) - f(i, j - 1)) * (0.5 * inv_h);
}

}  // namespace

double wrap_angle(double angle) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(angle, two_pi);  // [-pi, pi]
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

WrappedPhase wrapped_phase(const FringeSet& fringes) {
    fringes.validate();
    WrappedPhase out{ScalarField(fringes.grid()), 0};
    auto c = fringes.ic.values();
    auto s = fringes.is.values();
    auto b = fringes.b.values();
    auto p = out.phase.values();
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (b[k] == 0.0) {
            p[k] = 0.0;
            ++out.degenerate;
            continue;
        }
        // atan2 returns -pi for (-0, negative); fold onto +pi.
        double a = std::atan2(s[k], c[k]);
        if (a <= -std::numbers::pi) a = std::numbers::pi;
        p[k] = a;
    }
    return out;
}

GradientEstimate gradient_field(const FringeSet& fringes, const GradientOptions& options) {
    fringes.validate();
    const GridSpec& g = fringes.grid();
    const ScalarField& ic = fringes.ic;
    const ScalarField& is = fringes.is;

    double max_b2 = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double c = ic.values()[k], s = is.values()[k];
        max_b2 = std::max(max_b2, c * c + s * s);
    }
    const double floor = options.floor_fraction * max_b2;
    const double inv_hx = 1.0 / g.hx();
    const double inv_hy = 1.0 / g.hy();

    GradientEstimate out{VectorField(g), std::vector<bool>(g.size(), false), 0};
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i < g.m; ++i) {
            const double c = ic(i, j), s = is(i, j);
            const double b2 = c * c + s * s;
            if (!(b2 >= floor) || b2 == 0.0) {
                out.degenerate[j * g.m + i] = true;
                ++out.degenerate_count;
                continue;
            }
            out.field.u(i, j) = (ddx(is, i, j, inv_hx) * c - s * ddx(ic, i, j, inv_hx)) / b2;
            out.field.v(i, j) = (ddy(is, i, j, inv_hy) * c - s * ddy(ic, i, j, inv_hy)) / b2;
        }
    }
    return out;
}

}  // namespace phasevar
