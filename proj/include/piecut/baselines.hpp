#pragma once

#include <cstdint>

#include "piecut/graph.hpp"

namespace piecut {

// Second-smallest Laplacian eigenvector (one value per active vertex, in
// ascending id order). Throws when the eigensolver fails to converge.
std::vector<double> fiedler_vector(const Graph& f);

// Sign split of the second-smallest Laplacian eigenvector, balanced by the
// median. Throws when the eigensolver fails to converge.
Cut baseline_spectral(const Graph& f);

// Uniform balanced bisection; deterministic given seed.
Cut baseline_random(const Graph& f, uint64_t seed);

// Exact expected cost of a uniform bisection: m * (n/2) / (n-1).
double expected_random_bisection_cost(const Graph& f);

}  // namespace piecut
