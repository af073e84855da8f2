#pragma once

#include <cstddef>

#include "phasevar/field.hpp"
#include "phasevar/fringe_set.hpp"
#include "phasevar/solver.hpp"

namespace phasevar {

struct GridIndex {
    std::size_t i = 0;  ///< column
    std::size_t j = 0;  ///< row
};

/**
 * Line-integral reconstruction from a node-centred gradient field.
 * Trapezoidal integration along the anchor row, then up and down every
 * column from that row. The result is zero at the anchor.
 */
ScalarField integrate_gradient(const VectorField& gradient, GridIndex anchor);

/**
 * Absolute-phase starting point for the variational solver: the line
 * integral anchored at the grid centre, offset by the wrapped phase there.
 */
ScalarField line_integral_estimate(const FringeSet& fringes, const VectorField& gradient);

/// Wrapped forward differences W(psi_{i+1} - psi_i)/h in grad_half storage.
VectorField wrapped_differences(const ScalarField& wrapped);

/**
 * Least-squares unwrapping: minimizes 1/2 sum |grad phi - W(grad psi)|^2
 * (the discrete Neumann Poisson problem) with the same descent driver used
 * for the phase energy. config.lambda is ignored. The result has zero mean.
 */
SolverResult poisson_unwrap(const ScalarField& wrapped, const SolverConfig& config);

}  // namespace phasevar
