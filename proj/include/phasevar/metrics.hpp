#pragma once

#include "phasevar/field.hpp"

namespace phasevar {

/// ||mu - nu|| / (||mu|| + ||nu||) over plain sample sums; 0 when both are zero.
double q_error(const ScalarField& mu, const ScalarField& nu);

/// 10 log10( sum (s - mean s)^2 / sum (noisy - s)^2 ); +inf when noisy == signal.
double snr_db(const ScalarField& signal, const ScalarField& noisy);

/// mu shifted by a constant so that its mean equals mean(nu).
ScalarField mean_align(const ScalarField& mu, const ScalarField& nu);

}  // namespace phasevar
