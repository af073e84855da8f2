#include "phasevar/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phasevar/errors.hpp"

namespace phasevar {

GridSpec GridSpec::make(double a, double b, double c, double d, std::size_t m, std::size_t n) {
    if (m < 2 || n < 2) {
        throw InvalidInput("grid needs at least 2x2 samples, got " + std::to_string(m) + "x" +
                           std::to_string(n));
    }
    if (m > std::numeric_limits<std::size_t>::max() / n) {
        throw InvalidInput("grid sample count overflows");
    }
    GridSpec g{a, b, c, d, m, n};
    if (!(std::isfinite(g.hx()) && g.hx() > 0.0 && std::isfinite(g.hy()) && g.hy() > 0.0)) {
        throw InvalidInput("grid spacings must be positive and finite");
    }
    return g;
}

GridSpec GridSpec::pixels(std::size_t m, std::size_t n) {
    return make(0.0, static_cast<double>(m) - 1.0, 0.0, static_cast<double>(n) - 1.0, m, n);
}

ScalarField::ScalarField(const GridSpec& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InvalidInput("field has " + std::to_string(values_.size()) + " samples, grid expects " +
                           std::to_string(grid_.size()));
    }
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double ScalarField::mean() const noexcept {
    if (values_.empty()) return 0.0;
    double sum = 0.0;
    for (double x : values_) sum += x;
    return sum / static_cast<double>(values_.size());
}

double ScalarField::max_abs() const noexcept {
    double best = 0.0;
    for (double x : values_) best = std::max(best, std::abs(x));
    return best;
}

ScalarField ScalarField::regridded(const GridSpec& grid) const {
    if (grid.m != grid_.m || grid.n != grid_.n) {
        throw InvalidInput("regrid must preserve sample counts");
    }
    return ScalarField(grid, values_);
}

VectorField::VectorField(ScalarField u_, ScalarField v_) : u(std::move(u_)), v(std::move(v_)) {
    require_same_grid(u.grid(), v.grid(), "vector field components");
}

void require_same_grid(const GridSpec& lhs, const GridSpec& rhs, const char* what) {
    if (!(lhs == rhs)) {
        throw InvalidInput(std::string("grid mismatch: ") + what);
    }
}

}  // namespace phasevar
