#pragma once

#include <cstddef>
#include <vector>

#include "phasevar/field.hpp"
#include "phasevar/fringe_set.hpp"

namespace phasevar {

struct WrappedPhase {
    ScalarField phase;           ///< atan2(I^s, I^c), in (-pi, pi]
    std::size_t degenerate = 0;  ///< samples with b == 0, set to 0
};

WrappedPhase wrapped_phase(const FringeSet& fringes);

struct GradientEstimate {
    VectorField field;            ///< node-centred (dphi/dx, dphi/dy)
    std::vector<bool> degenerate;  ///< per sample, row-major
    std::size_t degenerate_count = 0;
};

struct GradientOptions {
    /// Samples with I^c^2 + I^s^2 below floor_fraction * max(b^2) are zeroed.
    double floor_fraction = 1e-9;
};

/**
 * Phase gradient from the fringe pair without an arctangent:
 * (dI^s I^c - I^s dI^c) / (I^c^2 + I^s^2) per axis. Derivatives use central
 * differences inside and one-sided differences on the edges.
 */
GradientEstimate gradient_field(const FringeSet& fringes, const GradientOptions& options = {});

/// Map any angle to (-pi, pi].
double wrap_angle(double angle) noexcept;

}  // namespace phasevar
