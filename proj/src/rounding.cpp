#include "piecut/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "piecut/rng.hpp"

namespace piecut {

namespace {

// Evaluates every prefix of `order` as the candidate side S, keeping the
// cheapest balanced one. Scores are maintained incrementally: moving a vertex
// into S flips its incident edges.
void sweep(const Graph& g, const std::vector<int>& order, double balance_cap,
           long long& best_cost, std::vector<char>& best_side, const std::vector<char>& in_scope,
           bool& found) {
    const int total = static_cast<int>(order.size());
    std::vector<char> in_s(g.n_total(), 0);
    long long crossing = 0;
    for (int prefix = 0; prefix + 1 < total; ++prefix) {
        int v = order[prefix];
        long long to_s = 0, to_rest = 0;
        for (int w : g.neighbors(v)) {
            if (!in_scope[w]) continue;
            if (in_s[w]) ++to_s;
            else ++to_rest;
        }
        crossing += to_rest - to_s;
        in_s[v] = 1;
        int size_s = prefix + 1;
        int size_t = total - size_s;
        if (std::max(size_s, size_t) > balance_cap) continue;
        if (crossing < best_cost) {
            best_cost = crossing;
            best_side.assign(in_s.begin(), in_s.end());
            found = true;
        }
    }
}

}  // namespace

Cut round_balanced(const Embedding& emb, const Graph& g, int n_total, double c_arv,
                   uint64_t seed) {
    std::vector<int> verts = g.active_vertices();
    const int k = static_cast<int>(verts.size());
    if (k <= 2) throw std::invalid_argument("round_balanced: too few active vertices");
    for (int v : verts)
        if (!emb.has(v)) throw std::invalid_argument("round_balanced: missing point");

    const double balance_cap = c_arv * static_cast<double>(n_total);
    if (std::ceil(static_cast<double>(k) / 2.0) > balance_cap)
        throw std::invalid_argument("round_balanced: balance bound unattainable");

    std::vector<char> in_scope(g.n_total(), 0);
    for (int v : verts) in_scope[v] = 1;

    long long best_cost = std::numeric_limits<long long>::max();
    std::vector<char> best_side;
    bool found = false;

    // farthest pair (deterministic tie-break by id order)
    int far_u = verts[0], far_v = verts[1];
    double far_d = -1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double d = emb.dist2(verts[i], verts[j]);
            if (d > far_d) {
                far_d = d;
                far_u = verts[i];
                far_v = verts[j];
            }
        }

    auto order_by_key = [&](const std::vector<double>& key) {
        std::vector<int> order = verts;
        std::vector<double> kv(g.n_total(), 0.0);
        for (int i = 0; i < k; ++i) kv[verts[i]] = key[i];
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (kv[a] != kv[b]) return kv[a] < kv[b];
            return a < b;
        });
        return order;
    };

    // ball-growing from both ends of the farthest pair
    for (int root : {far_u, far_v}) {
        std::vector<double> key(k);
        for (int i = 0; i < k; ++i) key[i] = emb.dist2(root, verts[i]);
        sweep(g, order_by_key(key), balance_cap, best_cost, best_side, in_scope, found);
    }

    // random-projection sweeps
    Rng rng = make_rng(derive_seed(seed, 0x40d));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int projections = 8;
    for (int p = 0; p < projections; ++p) {
        std::vector<double> dir(emb.dim());
        for (double& x : dir) x = gauss(rng);
        std::vector<double> key(k);
        for (int i = 0; i < k; ++i) {
            const double* pt = emb.point(verts[i]);
            double dot = 0.0;
            for (int d = 0; d < emb.dim(); ++d) dot += pt[d] * dir[d];
            key[i] = dot;
        }
        sweep(g, order_by_key(key), balance_cap, best_cost, best_side, in_scope, found);
    }

    if (!found) throw std::runtime_error("round_balanced: no balanced sweep position");

    Cut cut;
    for (int v : verts)
        (best_side[v] ? cut.side_a : cut.side_b).push_back(v);
    cut.crossing_edges = crossing_edges_of(g, cut.side_a, cut.side_b);
    if (static_cast<long long>(cut.crossing_edges.size()) != best_cost)
        throw std::logic_error("round_balanced: crossing count mismatch");
    double max_side = static_cast<double>(std::max(cut.side_a.size(), cut.side_b.size()));
    if (max_side > balance_cap)
        throw std::logic_error("round_balanced: balance bound violated");
    return cut;
}

}  // namespace piecut
