#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "phasevar/field.hpp"

namespace phasevar {

/**
 * Quadrature fringe pair I^c = b cos(phi), I^s = b sin(phi) with the
 * amplitude b = sqrt(I^c^2 + I^s^2) derived from them.
 *
 * Members are public so tests can pose arbitrary (ic, is, b) triples to the
 * energy; pipeline code should build sets through from_quadrature().
 */
struct FringeSet {
    ScalarField ic;
    ScalarField is;
    ScalarField b;
    std::string provenance;
    std::optional<std::uint64_t> noise_seed;

    static FringeSet from_quadrature(ScalarField ic, ScalarField is, std::string provenance = {});

    const GridSpec& grid() const noexcept { return ic.grid(); }

    /// Throws InvalidInput unless ic, is, b share one grid.
    void validate() const;

    /// The same samples reinterpreted on a unit-spacing grid.
    FringeSet on_pixel_grid() const;
};

}  // namespace phasevar
