#include "phasevar/synthesis.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "phasevar/errors.hpp"

namespace phasevar {

namespace {

void warn_domain(const GridSpec& g, double lo, double hi, const char* name) {
    constexpr double tol = 1e-12;
    if (std::abs(g.a - lo) > tol || std::abs(g.b - hi) > tol || std::abs(g.c - lo) > tol ||
        std::abs(g.d - hi) > tol) {
        std::clog << "warning: " << name << " is defined on [" << lo << "," << hi
                  << "]^2; evaluating on [" << g.a << "," << g.b << "]x[" << g.c << "," << g.d
                  << "]\n";
    }
}

template <class F>
ScalarField sample(const GridSpec& g, F&& f) {
    ScalarField out(g);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double y = g.y(j);
        for (std::size_t i = 0; i < g.m; ++i) out(i, j) = f(g.x(i), y);
    }
    return out;
}

double variance(std::span<const double> xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(xs.size());
}

void add_noise(ScalarField& f, double snr_db, std::mt19937_64& rng) {
    const double sigma = std::sqrt(variance(f.values()) / std::pow(10.0, snr_db / 10.0));
    std::normal_distribution<double> gauss(0.0, sigma);
    for (double& x : f.values()) x += gauss(rng);
}

}  // namespace

double wavefront_value(double x, double y, WavefrontVariant variant) {
    const double x2 = x * x, y2 = y * y;
    const double x3 = x2 * x, y3 = y2 * y;
    const double x4 = x2 * x2, y4 = y2 * y2;
    const double x5 = x4 * x, y5 = y4 * y;
    const double last = variant == WavefrontVariant::AsPrinted ? -15.0 * x4 : -15.0 * x4 * y;
    return 1.3 - 1.9 * x - 1.3 * (1.0 - 6.0 * y2 - 6.0 * x2 + 6.0 * y4 + 12.0 * x2 * y2 + 6.0 * x4) +
           3.415 * (5.0 * x * y4 - 10.0 * x3 * y2 + x5) +
           0.43 * (3.0 * x - 12.0 * x * y2 - 12.0 * x3 + 10.0 * x * y4 + 20.0 * x3 * y2 + 10.0 * x5) +
           2.6 * (-4.0 * y3 + 12.0 * x2 * y + 5.0 * y5 - 10.0 * x2 * y3 + last);
}

void wavefront_gradient(double x, double y, double& dx, double& dy, WavefrontVariant variant) {
    const double x2 = x * x, y2 = y * y;
    const double x3 = x2 * x, y3 = y2 * y;
    const double x4 = x2 * x2, y4 = y2 * y2;
    const bool printed = variant == WavefrontVariant::AsPrinted;
    dx = -1.9 - 1.3 * (-12.0 * x + 24.0 * x * y2 + 24.0 * x3) +
         3.415 * (5.0 * y4 - 30.0 * x2 * y2 + 5.0 * x4) +
         0.43 * (3.0 - 12.0 * y2 - 36.0 * x2 + 10.0 * y4 + 60.0 * x2 * y2 + 50.0 * x4) +
         2.6 * (24.0 * x * y - 20.0 * x * y3 + (printed ? -60.0 * x3 : -60.0 * x3 * y));
    dy = -1.3 * (-12.0 * y + 24.0 * y3 + 24.0 * x2 * y) + 3.415 * (20.0 * x * y3 - 20.0 * x3 * y) +
         0.43 * (-24.0 * x * y + 40.0 * x * y3 + 40.0 * x3 * y) +
         2.6 * (-12.0 * y2 + 12.0 * x2 + 25.0 * y4 - 30.0 * x2 * y2 + (printed ? 0.0 : -15.0 * x4));
}

double peaks_value(double x, double y) {
    return 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0)) -
           10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y) -
           std::exp(-(x + 1.0) * (x + 1.0) - y * y) / 3.0;
}

ScalarField wavefront_phase(const GridSpec& grid, WavefrontVariant variant) {
    warn_domain(grid, -1.0, 1.0, "wavefront");
    return sample(grid, [variant](double x, double y) { return wavefront_value(x, y, variant); });
}

ScalarField peaks_phase(const GridSpec& grid) {
    warn_domain(grid, -2.3, 2.3, "peaks");
    return sample(grid, peaks_value);
}

FringeSet make_fringes(const ScalarField& phi, const ScalarField& amplitude, const NoiseSpec& noise) {
    require_same_grid(phi.grid(), amplitude.grid(), "make_fringes amplitude");
    if (!phi.all_finite()) throw InvalidInput("make_fringes: non-finite phase");
    for (double b : amplitude.values()) {
        if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInput("make_fringes: amplitude must be > 0");
    }
    if (noise.target_snr_db && !std::isfinite(*noise.target_snr_db)) {
        throw InvalidInput("make_fringes: target SNR must be finite");
    }
    ScalarField ic(phi.grid());
    ScalarField is(phi.grid());
    auto p = phi.values();
    auto b = amplitude.values();
    auto c = ic.values();
    auto s = is.values();
    for (std::size_t k = 0; k < p.size(); ++k) {
        c[k] = b[k] * std::cos(p[k]);
        s[k] = b[k] * std::sin(p[k]);
    }

    std::ostringstream prov;
    prov << "synthetic";
    if (noise.target_snr_db) {
        std::mt19937_64 rng(noise.seed);
        add_noise(ic, *noise.target_snr_db, rng);
        add_noise(is, *noise.target_snr_db, rng);
        prov << " snr_db=" << *noise.target_snr_db << " seed=" << noise.seed;
    } else {
        prov << " noiseless";
    }
    FringeSet out = FringeSet::from_quadrature(std::move(ic), std::move(is), prov.str());
    if (noise.target_snr_db) out.noise_seed = noise.seed;
    return out;
}

FringeSet make_fringes(const ScalarField& phi, double amplitude, const NoiseSpec& noise) {
    return make_fringes(phi, ScalarField(phi.grid(), amplitude), noise);
}

}  // namespace phasevar
