#pragma once

#include <cstdint>
#include <vector>

#include "piecut/graph.hpp"

namespace piecut {

// s-t network for the damage-control step. Node 0 is the source, node 1 the
// sink, node 2+i stands for the i-th entry of `vertex_ids`. Capacities are
// exact integers: real-valued inputs are scaled by `scale` once at build time
// and all downstream arithmetic stays integral.
struct FlowNetwork {
    struct Arc {
        int to;
        long long cap;   // residual capacity
        int rev;         // index of the reverse arc in adj[to]
    };

    int num_nodes = 0;
    int source = 0;
    int sink = 1;
    std::vector<std::vector<Arc>> adj;
    std::vector<int> vertex_ids;          // node 2+i <-> vertex_ids[i]

    // Bookkeeping for the budget/cut-value identity checks.
    long long scale = 1;
    std::vector<long long> budget_scaled;  // per vertex_ids entry
    long long sink_cap_scaled = 0;         // 2*beta*d, scaled
    long long edge_cap_scaled = 0;         // 2, scaled
    long long total_budget_scaled = 0;

    int add_node();
    void add_arc(int from, int to, long long cap);
};

// Fixed-point denominator for real-valued capacities (2 beta d). One
// quantization happens here; every consumer that states or checks an
// inequality involving 2 beta d uses the same scaled integer.
inline constexpr long long kFlowScale = 1LL << 16;

// Source->u with capacity budget(u); u->sink with capacity 2*beta*d; every
// graph edge becomes two opposite arcs of capacity 2. Budgets must be
// nonnegative integers (one per active vertex).
FlowNetwork build_damage_network(const Graph& g, const std::vector<long long>& budgets,
                                 double beta_d);

struct MinCutResult {
    std::vector<int> source_side;   // vertex ids on the source side (minimal such set)
    long long cut_value_scaled = 0;
    double cut_value = 0.0;         // cut_value_scaled / scale
    long long flow_scaled = 0;
};

// Exact max-flow / min-cut (Dinic). The returned source side is the set of
// vertices reachable from the source in the residual graph, which is the
// unique minimal minimum cut; results are deterministic.
MinCutResult min_cut(FlowNetwork net);

// Delta(S) = budget(S) - 2|E(S, V\S)| - 2 beta d |S|, in scaled integer units,
// evaluated on the graph the network was built from.
long long damage_delta_scaled(const Graph& g, const std::vector<long long>& budgets,
                              long long sink_cap_scaled, long long scale,
                              const std::vector<int>& s);

}  // namespace piecut
