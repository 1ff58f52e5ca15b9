#pragma once

#include <cstdint>

#include "piecut/embedding.hpp"
#include "piecut/graph.hpp"

namespace piecut {

// Rounds an embedding to a balanced cut of the active graph: ball-growing
// sweeps in the squared-Euclidean metric from both ends of the farthest pair,
// plus random-projection sweeps as a fallback, keeping the cheapest cut with
// max(|L'|, |R'|) <= c_arv * n_total. Deterministic given seed. Throws when
// the active graph has fewer than 3 vertices or no sweep position satisfies
// the balance bound.
Cut round_balanced(const Embedding& emb, const Graph& g, int n_total, double c_arv,
                   uint64_t seed);

}  // namespace piecut
