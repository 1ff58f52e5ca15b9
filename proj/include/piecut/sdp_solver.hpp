#pragma once

#include <cstdint>

#include "piecut/embedding.hpp"
#include "piecut/graph.hpp"

namespace piecut {

struct SdpParams {
    int dim = 0;                      // 0 = ceil(log2 n_total) + 4
    int max_outer = 40;               // multiplier / penalty rounds
    int inner_iters = 350;            // gradient steps per round
    double eps = 1e-3;                // feasibility tolerance
    double lr = 0.05;
    double lr_decay = 0.9;
    double lr_min = 0.004;
    double rho0 = 0.5;                // initial penalty weight
    int triangle_samples = 20000;     // sampled triples per round
    int max_active_triangles = 4000;
    uint64_t seed = 1;
};

struct SolveResult {
    Embedding embedding;
    bool converged = false;           // reached eps feasibility
    ViolationReport report;           // full feasibility scan of the returned iterate
    double cost = 0.0;
    int outer_rounds = 0;
};

// Minimizes the total squared edge length over near-sphere embeddings subject
// to the spreading and triangle constraints at tolerance eps. The spreading
// cap always uses n_total (the original instance size), not the current
// subgraph size. Deterministic given params.seed. When `warm` is provided its
// points seed the iterate, and if the warm start itself is eps-feasible the
// returned cost never exceeds its cost.
SolveResult solve(const Graph& g, int n_total, const SdpParams& params,
                  const Embedding* warm = nullptr);

}  // namespace piecut
