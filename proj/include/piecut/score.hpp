#pragma once

#include <optional>
#include <string>

#include "piecut/graph.hpp"
#include "piecut/instance.hpp"
#include "piecut/partition.hpp"

namespace piecut {

struct ScoreReport {
    long long cut_cost = 0;          // recomputed from the graph, cross-checked
    long long reported_cut_cost = 0;
    bool cost_check_ok = false;
    long long noise_budget = 0;      // |E_R|
    long long crossing_noise = 0;    // |E_R crossing (L, R)|
    double ratio = 0.0;              // cut_cost / max(crossing_noise, 1)
    double balance = 0.0;            // min side / n
    long long spectral_cost = -1;
    long long random_cost = -1;
    bool property3 = false;
    bool property4 = false;
    int failed_invariants = 0;
    bool degraded = false;
    bool used_fallback = false;
    double runtime_ms = 0.0;
};

struct ScoreOptions {
    bool run_baselines = true;
    double alpha = 0.0;   // for the property validators; <= 0 disables
    double beta = 0.0;
    double d = 0.0;
    uint64_t seed = 1;
};

// Scores a partition against hidden ground truth. Recomputes the cut cost
// from the graph independently of the solver's count. Throws when the pieces
// do not partition the vertex set.
ScoreReport evaluate(const PartitionResult& result, const PlantedInstance& inst,
                     const ScoreOptions& opts = {});

}  // namespace piecut
