#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "piecut/embedding.hpp"
#include "piecut/graph.hpp"
#include "piecut/sdp_solver.hpp"

namespace piecut {

struct AlgoParams {
    // K and C are the two tuned master constants; every derived quantity
    // follows the same couplings on any scale. The repo defaults live in
    // defaults.hpp and were fixed by the benchmark suite.
    double K = 5e-5;
    double C = 0.005;
    double delta = 1.0 / 12.0;
    double c_arv = 0.75;
    double d_eff = 3.0;        // measured rounding factor (records D_n)
    int T = 0;                 // 0 = ceil(log2(sqrt(log2 n))) + 2
    SdpParams sdp;
    uint64_t seed = 1;
    bool strict = true;        // invariant breach -> throw; otherwise recorded
    int damage_check_samples = 1000;

    double beta() const { return 200.0 * K; }
    double alpha() const { return 50.0 * beta(); }
    double eta(int t) const { return std::ldexp(1.0, -t); }
    double d_n() const { return std::max(d_eff, alpha()); }
    int effective_T(int n) const;
};

struct BudgetState {
    std::vector<long long> budget;    // per vertex id; meaningful for active vertices
    std::vector<long long> initial;
    std::vector<int> cut_incident;    // ledger edges incident on each vertex
    double extra_budget = 0.0;
    long long active_budget_sum = 0;
    double initial_total = 0.0;       // total budget right after allocation

    struct LedgerEntry {
        int t;
        int step;  // 2, 3 or 4
        EdgeSet edges;
    };
    std::vector<LedgerEntry> ledger;

    double total_budget() const { return static_cast<double>(active_budget_sum) + extra_budget; }
    long long cumulative_cut(int step) const;  // sum of |Upsilon_step(t)| over t; 0 = all
};

struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantCheck {
    std::string name;
    int t = -1;
    int step = -1;
    bool pass = true;
    std::string detail;
};

struct IterationTrace {
    int t = 0;
    double sdp_cost = 0.0;
    bool sdp_converged = true;
    long long long_cut = 0;
    int heavy_components = 0;
    long long heavy_cut = 0;
    int damage_y_size = 0;
    long long damage_cut = 0;
    double total_budget = 0.0;
    int active_n = 0;
};

struct PartitionResult {
    std::vector<std::vector<int>> pieces;
    Cut final_cut;
    long long cut_cost = 0;
    std::vector<IterationTrace> trace;
    bool degraded = false;
    bool used_fallback = false;
    double runtime_ms = 0.0;
    double d_used = 0.0;
    std::vector<InvariantCheck> checks;
    std::vector<double> blind_grid;
    double blind_chosen_d = 0.0;

    std::vector<std::string> failed_checks() const;
};

// d = max(2 |E_H| / n, C log2^3 n)
double compute_d(long long m_h, int n, double C);

// Budget of beta*d (rounded up once) for vertices of degree >= alpha*d and
// alpha*d otherwise; extra budget of 3nd/delta.
BudgetState allocate_budgets(const Graph& f, double d, double alpha, double beta,
                             double delta);

struct LongEdgeResult {
    Graph graph;
    EdgeSet cut;
    LongEdgeResult(Graph g, EdgeSet c) : graph(std::move(g)), cut(std::move(c)) {}
};
// Cuts every edge longer than the threshold; +1 budget on both endpoints and
// -3 extra budget per edge. Throws InvariantViolation if the extra budget
// would go negative.
LongEdgeResult remove_long_edges(BudgetState& state, const Graph& g, const Embedding& emb,
                                 double threshold, int t);

struct HeavyRemovalResult {
    Graph graph;
    std::vector<std::vector<int>> components;  // removed balls, in removal order
    EdgeSet cut;
    std::vector<InvariantCheck> checks;
    HeavyRemovalResult(Graph g) : graph(std::move(g)) {}
};
// Removes, in ascending vertex-id order, every still-active vertex whose
// 3*delta ball carries budget >= beta * eta_t * n * d, cutting the boundary of
// the radius in [3 delta, 4 delta] that minimizes it (ties -> smaller r).
HeavyRemovalResult heavy_vertices_removal(BudgetState& state, const Graph& g,
                                          const Embedding& emb, double eta_t, int n_total,
                                          double d, double beta, double delta, int t,
                                          bool strict);

struct DamageControlResult {
    Graph graph;
    std::vector<int> removed;  // Y, empty on no-op
    EdgeSet cut;
    long long delta_scaled = 0;
    std::vector<InvariantCheck> checks;
    DamageControlResult(Graph g) : graph(std::move(g)) {}
};
// Max-flow step: removes the set maximizing budget(Y) - 2|E(Y, ~Y)| - 2 beta d |Y|
// when the maximum is positive. Afterwards checks the per-set budget bound on
// all singletons and `samples` random subsets. n_total is the original
// instance size (the 3n/4 component bound refers to it).
DamageControlResult damage_control(BudgetState& state, const Graph& g, double beta_d,
                                   int n_total, int t, int samples, uint64_t seed,
                                   bool strict);

PartitionResult run(const Graph& f, const AlgoParams& params, double d);

// Fallback when the degree profile is too skewed for the budget scheme:
// the ceil(n / (3 alpha)) lowest-degree vertices against the rest.
PartitionResult simple_degree_cut(const Graph& f, double alpha, double d);

// Runs `run` over a geometric grid of d values and keeps the cheapest
// balanced result.
PartitionResult run_blind(const Graph& f, const AlgoParams& params);

// Greedy largest-first combination of pieces into two sides; with every piece
// at most 3n/4 this yields sides of at least n/4.
Cut combine_pieces(const Graph& f, const std::vector<std::vector<int>>& pieces);

}  // namespace piecut
