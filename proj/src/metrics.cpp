#include "phasevar/metrics.hpp"

#include <cmath>
#include <limits>

namespace phasevar {

double q_error(const ScalarField& mu, const ScalarField& nu) {
    require_same_grid(mu.grid(), nu.grid(), "q_error");
    auto a = mu.values();
    auto b = nu.values();
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff += (a[k] - b[k]) * (a[k] - b[k]);
        na += a[k] * a[k];
        nb += b[k] * b[k];
    }
    const double denom = std::sqrt(na) + std::sqrt(nb);
    if (denom == 0.0) return 0.0;
    return std::sqrt(diff) / denom;
}

double snr_db(const ScalarField& signal, const ScalarField& noisy) {
    require_same_grid(signal.grid(), noisy.grid(), "snr_db");
    const double mean = signal.mean();
    auto s = signal.values();
    auto y = noisy.values();
    double power = 0.0, noise = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        power += (s[k] - mean) * (s[k] - mean);
        noise += (y[k] - s[k]) * (y[k] - s[k]);
    }
    if (noise == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(power / noise);
}

ScalarField mean_align(const ScalarField& mu, const ScalarField& nu) {
    require_same_grid(mu.grid(), nu.grid(), "mean_align");
    const double shift = nu.mean() - mu.mean();
    ScalarField out = mu;
    for (double& x : out.values()) x += shift;
    return out;
}

}  // namespace phasevar
