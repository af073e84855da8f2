#pragma once

#include <cstdint>
#include <optional>

#include "phasevar/field.hpp"
#include "phasevar/fringe_set.hpp"

namespace phasevar {

struct NoiseSpec {
    std::optional<double> target_snr_db;  ///< nullopt: noiseless
    std::uint64_t seed = 1;
};

/// Which reading of the last wavefront monomial to use.
enum class WavefrontVariant {
    AsPrinted,     ///< ... - 15 x^4
    QuarticTimesY  ///< ... - 15 x^4 y
};

/// Polynomial test wavefront on [-1,1]^2, in radians.
double wavefront_value(double x, double y, WavefrontVariant variant = WavefrontVariant::AsPrinted);
/// Analytic gradient of wavefront_value.
void wavefront_gradient(double x, double y, double& dx, double& dy,
                        WavefrontVariant variant = WavefrontVariant::AsPrinted);

/// MATLAB-style peaks surface, used as phase in radians.
double peaks_value(double x, double y);

ScalarField wavefront_phase(const GridSpec& grid, WavefrontVariant variant = WavefrontVariant::AsPrinted);
ScalarField peaks_phase(const GridSpec& grid);

/**
 * I^c = b cos(phi), I^s = b sin(phi), optionally with independent white
 * Gaussian noise on each image. The noise standard deviation of each image
 * is sqrt(var(signal) / 10^(snr/10)), matching snr_db().
 */
FringeSet make_fringes(const ScalarField& phi, const ScalarField& amplitude, const NoiseSpec& noise);
FringeSet make_fringes(const ScalarField& phi, double amplitude, const NoiseSpec& noise);

}  // namespace phasevar
