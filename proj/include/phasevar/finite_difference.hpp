#pragma once

#include <optional>

#include "phasevar/field.hpp"

namespace phasevar {

// Half-point differences. grad_half stores the forward difference between
// nodes i and i+1 at index i; slot m-1 (resp. n-1) is the outer boundary face
// and carries the ghost flux, which is zero for a bare gradient. div_half is
// the backward difference over those faces with both outer fluxes taken as
// zero, so that <grad_half(phi), V> = -<phi, div_half(V)> for any V.

VectorField grad_half(const ScalarField& phi);
ScalarField div_half(const VectorField& field);

/// 5-point Laplacian with zero-flux boundaries: div_half(grad_half(phi)).
ScalarField laplacian(const ScalarField& phi);

/**
 * Clamp boundary-face fluxes.
 *
 * With `data` present, the outer faces of the result copy `data` so that
 * (result - data) has zero normal flux there. Without it the outer faces are
 * zeroed (pure Neumann). Interior faces are returned unchanged.
 */
VectorField apply_flux_bc(const VectorField& field, const std::optional<VectorField>& data);

/// Sum of u1*u2 + v1*v2 over all samples, no quadrature weights.
double dot(const VectorField& lhs, const VectorField& rhs);
double dot(const ScalarField& lhs, const ScalarField& rhs);

}  // namespace phasevar
