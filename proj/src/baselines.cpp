#include "phasevar/baselines.hpp"

#include <cmath>
#include <numbers>

#include "phasevar/demodulation.hpp"
#include "phasevar/errors.hpp"

namespace phasevar {

ScalarField integrate_gradient(const VectorField& gradient, GridIndex anchor) {
    require_same_grid(gradient.u.grid(), gradient.v.grid(), "integrate_gradient components");
    if (!gradient.all_finite()) throw InvalidInput("integrate_gradient: non-finite samples");
    const GridSpec& g = gradient.grid();
    if (anchor.i >= g.m || anchor.j >= g.n) throw InvalidInput("integrate_gradient: anchor outside grid");
    const double hx = g.hx(), hy = g.hy();
    const auto& u = gradient.u;
    const auto& v = gradient.v;

    ScalarField phi(g);
    const std::size_t j0 = anchor.j;
    for (std::size_t i = anchor.i + 1; i < g.m; ++i) {
        phi(i, j0) = phi(i - 1, j0) + 0.5 * hx * (u(i - 1, j0) + u(i, j0));
    }
    for (std::size_t i = anchor.i; i-- > 0;) {
        phi(i, j0) = phi(i + 1, j0) - 0.5 * hx * (u(i, j0) + u(i + 1, j0));
    }
    for (std::size_t i = 0; i < g.m; ++i) {
        for (std::size_t j = j0 + 1; j < g.n; ++j) {
            phi(i, j) = phi(i, j - 1) + 0.5 * hy * (v(i, j - 1) + v(i, j));
        }
        for (std::size_t j = j0; j-- > 0;) {
            phi(i, j) = phi(i, j + 1) - 0.5 * hy * (v(i, j) + v(i, j + 1));
        }
    }
    return phi;
}

ScalarField line_integral_estimate(const FringeSet& fringes, const VectorField& gradient) {
    require_same_grid(fringes.grid(), gradient.grid(), "line_integral_estimate");
    const GridIndex centre{fringes.grid().m / 2, fringes.grid().n / 2};
    ScalarField phi = integrate_gradient(gradient, centre);
    const double offset = std::atan2(fringes.is(centre.i, centre.j), fringes.ic(centre.i, centre.j));
    for (double& x : phi.values()) x += offset;
    return phi;
}

VectorField wrapped_differences(const ScalarField& wrapped) {
    const GridSpec& g = wrapped.grid();
    const double inv_hx = 1.0 / g.hx(), inv_hy = 1.0 / g.hy();
    VectorField out(g);
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i + 1 < g.m; ++i) {
            out.u(i, j) = wrap_angle(wrapped(i + 1, j) - wrapped(i, j)) * inv_hx;
        }
    }
    for (std::size_t j = 0; j + 1 < g.n; ++j) {
        for (std::size_t i = 0; i < g.m; ++i) {
            out.v(i, j) = wrap_angle(wrapped(i, j + 1) - wrapped(i, j)) * inv_hy;
        }
    }
    return out;
}

SolverResult poisson_unwrap(const ScalarField& wrapped, const SolverConfig& config) {
    if (!wrapped.all_finite()) throw InvalidInput("poisson_unwrap: non-finite samples");
    for (double x : wrapped.values()) {
        if (x <= -std::numbers::pi - 1e-12 || x > std::numbers::pi + 1e-12) {
            throw InvalidInput("poisson_unwrap: input is not wrapped to (-pi, pi]");
        }
    }
    const VectorField target = wrapped_differences(wrapped);
    const PhaseEnergy objective(target, 0.0);
    SolverConfig cfg = config;
    cfg.lambda = 0.0;
    SolverResult result = run_descent(objective, cfg.init.make(wrapped.grid()), cfg);
    const double mean = result.phase.mean();
    for (double& x : result.phase.values()) x -= mean;
    return result;
}

}  // namespace phasevar
