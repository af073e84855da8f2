#pragma once

#include <cstdint>
#include <random>

#include "phasevar/field.hpp"

namespace phasevar::testing {

inline ScalarField random_field(const GridSpec& g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField f(g);
    for (double& x : f.values()) x = dist(rng);
    return f;
}

inline VectorField random_vector_field(const GridSpec& g, std::mt19937_64& rng, double lo = -1.0,
                                       double hi = 1.0) {
    return VectorField(random_field(g, rng, lo, hi), random_field(g, rng, lo, hi));
}

template <class F>
ScalarField sample(const GridSpec& g, F&& f) {
    ScalarField out(g);
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i < g.m; ++i) out(i, j) = f(g.x(i), g.y(j));
    return out;
}

}  // namespace phasevar::testing
