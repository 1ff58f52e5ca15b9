#include "piecut/maxflow.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace piecut {

int FlowNetwork::add_node() {
    adj.emplace_back();
    return num_nodes++;
}

void FlowNetwork::add_arc(int from, int to, long long cap) {
    if (cap < 0) throw std::invalid_argument("negative arc capacity");
    adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
}

FlowNetwork build_damage_network(const Graph& g, const std::vector<long long>& budgets,
                                 double beta_d) {
    if (beta_d < 0) throw std::invalid_argument("negative beta_d");
    FlowNetwork net;
    net.scale = kFlowScale;
    net.sink_cap_scaled = llround(2.0 * beta_d * static_cast<double>(net.scale));
    net.edge_cap_scaled = 2 * net.scale;
    net.vertex_ids = g.active_vertices();

    net.add_node();  // source
    net.add_node();  // sink
    std::vector<int> node_of(g.n_total(), -1);
    for (size_t i = 0; i < net.vertex_ids.size(); ++i) {
        int node = net.add_node();
        node_of[net.vertex_ids[i]] = node;
    }

    net.budget_scaled.reserve(net.vertex_ids.size());
    for (int v : net.vertex_ids) {
        if (v >= static_cast<int>(budgets.size()) || budgets[v] < 0)
            throw std::invalid_argument("budget missing or negative for vertex " +
                                        std::to_string(v));
        long long b = budgets[v] * net.scale;
        net.budget_scaled.push_back(b);
        net.total_budget_scaled += b;
        net.add_arc(net.source, node_of[v], b);
        net.add_arc(node_of[v], net.sink, net.sink_cap_scaled);
    }
    for (const Edge& e : g.edges()) {
        net.add_arc(node_of[e.u], node_of[e.v], net.edge_cap_scaled);
        net.add_arc(node_of[e.v], node_of[e.u], net.edge_cap_scaled);
    }
    return net;
}

namespace {

struct Dinic {
    FlowNetwork& net;
    std::vector<int> level, iter;

    explicit Dinic(FlowNetwork& n) : net(n), level(n.num_nodes), iter(n.num_nodes) {}

    bool bfs() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[net.source] = 0;
        q.push(net.source);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& a : net.adj[v]) {
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[v] + 1;
                    q.push(a.to);
                }
            }
        }
        return level[net.sink] >= 0;
    }

    long long dfs(int v, long long f) {
        if (v == net.sink) return f;
        for (int& i = iter[v]; i < static_cast<int>(net.adj[v].size()); ++i) {
            auto& a = net.adj[v][i];
            if (a.cap > 0 && level[a.to] == level[v] + 1) {
                long long d = dfs(a.to, std::min(f, a.cap));
                if (d > 0) {
                    a.cap -= d;
                    net.adj[a.to][a.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    long long run() {
        long long flow = 0;
        const long long inf = std::numeric_limits<long long>::max();
        while (bfs()) {
            std::fill(iter.begin(), iter.end(), 0);
            long long f;
            while ((f = dfs(net.source, inf)) > 0) flow += f;
        }
        return flow;
    }
};

// Flow certificate checks: capacity feasibility and conservation.
void verify_flow(const FlowNetwork& orig, const FlowNetwork& residual, long long flow) {
    std::vector<long long> excess(orig.num_nodes, 0);
    for (int v = 0; v < orig.num_nodes; ++v) {
        for (size_t i = 0; i < orig.adj[v].size(); ++i) {
            long long sent = orig.adj[v][i].cap - residual.adj[v][i].cap;
            if (sent > orig.adj[v][i].cap)
                throw std::logic_error("flow exceeds capacity");
            if (sent > 0) {
                excess[v] -= sent;
                excess[orig.adj[v][i].to] += sent;
            }
        }
    }
    for (int v = 0; v < orig.num_nodes; ++v) {
        if (v == orig.source || v == orig.sink) continue;
        if (excess[v] != 0) throw std::logic_error("flow conservation violated");
    }
    if (excess[orig.sink] != flow || excess[orig.source] != -flow)
        throw std::logic_error("flow value mismatch");
}

}  // namespace

long long damage_delta_scaled(const Graph& g, const std::vector<long long>& budgets,
                              long long sink_cap_scaled, long long scale,
                              const std::vector<int>& s) {
    std::vector<char> in_s(g.n_total(), 0);
    for (int v : s) in_s[v] = 1;
    long long budget_sum = 0, boundary = 0;
    for (int v : s) {
        budget_sum += budgets[v];
        for (int w : g.neighbors(v))
            if (!in_s[w]) ++boundary;
    }
    return budget_sum * scale - 2 * boundary * scale -
           sink_cap_scaled * static_cast<long long>(s.size());
}

MinCutResult min_cut(FlowNetwork net) {
    const FlowNetwork original = net;
    Dinic dinic(net);
    long long flow = dinic.run();
    verify_flow(original, net, flow);

    // residual reachability from the source -> minimal minimum cut
    std::vector<char> reach(net.num_nodes, 0);
    std::queue<int> q;
    reach[net.source] = 1;
    q.push(net.source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& a : net.adj[v]) {
            if (a.cap > 0 && !reach[a.to]) {
                reach[a.to] = 1;
                q.push(a.to);
            }
        }
    }
    if (reach[net.sink]) throw std::logic_error("sink reachable after max flow");

    MinCutResult res;
    for (size_t i = 0; i < net.vertex_ids.size(); ++i)
        if (reach[2 + i]) res.source_side.push_back(net.vertex_ids[i]);
    res.flow_scaled = flow;

    // cut value recomputed arc by arc; must equal the max flow exactly
    long long cut = 0;
    for (int v = 0; v < original.num_nodes; ++v) {
        if (!reach[v]) continue;
        for (const auto& a : original.adj[v])
            if (!reach[a.to]) cut += a.cap;
    }
    if (cut != flow) throw std::logic_error("max-flow/min-cut mismatch");
    res.cut_value_scaled = cut;
    res.cut_value = static_cast<double>(cut) / static_cast<double>(original.scale);
    return res;
}

}  // namespace piecut
