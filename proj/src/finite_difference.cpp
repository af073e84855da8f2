#include "phasevar/finite_difference.hpp"

#include "phasevar/errors.hpp"

namespace phasevar {

VectorField grad_half(const ScalarField& phi) {
    if (!phi.all_finite()) throw InvalidInput("grad_half: non-finite samples");
    const GridSpec& g = phi.grid();
    const double inv_hx = 1.0 / g.hx();
    const double inv_hy = 1.0 / g.hy();
    VectorField out(g);
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i + 1 < g.m; ++i) {
            out.u(i, j) = (phi(i + 1, j) - phi(i, j)) * inv_hx;
        }
    }
    for (std::size_t j = 0; j + 1 < g.n; ++j) {
        for (std::size_t i = 0; i < g.m; ++i) {
            out.v(i, j) = (phi(i, j + 1) - phi(i, j)) * inv_hy;
        }
    }
    return out;
}

ScalarField div_half(const VectorField& field) {
    require_same_grid(field.u.grid(), field.v.grid(), "div_half components");
    if (!field.all_finite()) throw InvalidInput("div_half: non-finite samples");
    const GridSpec& g = field.grid();
    const double inv_hx = 1.0 / g.hx();
    const double inv_hy = 1.0 / g.hy();
    const std::size_t m = g.m;
    const std::size_t n = g.n;
    ScalarField out(g);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            const double east = i + 1 < m ? field.u(i, j) : 0.0;
            const double west = i > 0 ? field.u(i - 1, j) : 0.0;
            const double north = j + 1 < n ? field.v(i, j) : 0.0;
            const double south = j > 0 ? field.v(i, j - 1) : 0.0;
            out(i, j) = (east - west) * inv_hx + (north - south) * inv_hy;
        }
    }
    return out;
}

ScalarField laplacian(const ScalarField& phi) { return div_half(grad_half(phi)); }

VectorField apply_flux_bc(const VectorField& field, const std::optional<VectorField>& data) {
    require_same_grid(field.u.grid(), field.v.grid(), "apply_flux_bc components");
    if (data) {
        require_same_grid(field.grid(), data->grid(), "apply_flux_bc data");
        require_same_grid(data->u.grid(), data->v.grid(), "apply_flux_bc data components");
    }
    const GridSpec& g = field.grid();
    VectorField out = field;
    for (std::size_t j = 0; j < g.n; ++j) {
        out.u(g.m - 1, j) = data ? data->u(g.m - 1, j) : 0.0;
    }
    for (std::size_t i = 0; i < g.m; ++i) {
        out.v(i, g.n - 1) = data ? data->v(i, g.n - 1) : 0.0;
    }
    return out;
}

double dot(const ScalarField& lhs, const ScalarField& rhs) {
    require_same_grid(lhs.grid(), rhs.grid(), "dot");
    double sum = 0.0;
    auto a = lhs.values();
    auto b = rhs.values();
    for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
    return sum;
}

double dot(const VectorField& lhs, const VectorField& rhs) {
    return dot(lhs.u, rhs.u) + dot(lhs.v, rhs.v);
}

}  // namespace phasevar
