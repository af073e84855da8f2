#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phasevar {

/**
 * Rectangular sampling grid over [a,b] x [c,d].
 *
 * Column index i runs along x (0..m-1), row index j along y (0..n-1).
 * Node (i,j) sits at (a + i*h_x, c + j*h_y).
 */
struct GridSpec {
    double a = 0.0, b = 1.0;
    double c = 0.0, d = 1.0;
    std::size_t m = 2;  ///< columns (x samples)
    std::size_t n = 2;  ///< rows (y samples)

    /// Throws InvalidInput unless m,n >= 2 and both spacings are positive and finite.
    static GridSpec make(double a, double b, double c, double d, std::size_t m, std::size_t n);

    /// Unit-spacing grid [0,m-1] x [0,n-1]: differences come out per pixel.
    static GridSpec pixels(std::size_t m, std::size_t n);

    double hx() const noexcept { return (b - a) / static_cast<double>(m - 1); }
    double hy() const noexcept { return (d - c) / static_cast<double>(n - 1); }
    double x(std::size_t i) const noexcept { return a + static_cast<double>(i) * hx(); }
    double y(std::size_t j) const noexcept { return c + static_cast<double>(j) * hy(); }
    std::size_t size() const noexcept { return m * n; }
    /// Quadrature weight of one node (midpoint rule).
    double cell_area() const noexcept { return hx() * hy(); }

    bool operator==(const GridSpec&) const = default;
};

/// Real samples on a GridSpec, stored row-major (row j = fixed y).
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& grid, double fill = 0.0);
    ScalarField(const GridSpec& grid, std::vector<double> values);

    const GridSpec& grid() const noexcept { return grid_; }
    std::size_t cols() const noexcept { return grid_.m; }
    std::size_t rows() const noexcept { return grid_.n; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[j * grid_.m + i]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[j * grid_.m + i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> row(std::size_t j) noexcept { return {values_.data() + j * grid_.m, grid_.m}; }
    std::span<const double> row(std::size_t j) const noexcept {
        return {values_.data() + j * grid_.m, grid_.m};
    }

    bool all_finite() const noexcept;
    double mean() const noexcept;
    double max_abs() const noexcept;

    /// Same samples, different geometry. Sample counts must match.
    ScalarField regridded(const GridSpec& grid) const;

    bool operator==(const ScalarField&) const = default;

private:
    GridSpec grid_{};
    std::vector<double> values_;
};

/// Component pair (u, v) = (d/dx, d/dy) on a shared grid.
struct VectorField {
    ScalarField u;
    ScalarField v;

    VectorField() = default;
    explicit VectorField(const GridSpec& grid) : u(grid), v(grid) {}
    VectorField(ScalarField u_, ScalarField v_);

    const GridSpec& grid() const noexcept { return u.grid(); }
    bool all_finite() const noexcept { return u.all_finite() && v.all_finite(); }
};

/// Throws InvalidInput naming `what` when the two grids differ.
void require_same_grid(const GridSpec& lhs, const GridSpec& rhs, const char* what);

}  // namespace phasevar
