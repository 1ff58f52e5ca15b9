#include <cmath>

#include "doctest.h"
#include "piecut/embedding.hpp"
#include "piecut/rng.hpp"
#include "piecut/rounding.hpp"
#include "piecut/sdp_solver.hpp"

using namespace piecut;

namespace {

Graph two_cliques(int n) {
    std::vector<Edge> edges;
    int half = n / 2;
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < half; ++i)
            for (int j = i + 1; j < half; ++j)
                edges.emplace_back(s * half + i, s * half + j);
    return Graph::from_edges(n, edges);
}

Graph random_graph(int n, double p, uint64_t seed) {
    Rng rng = make_rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uniform_real(rng) < p) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

// Random unit-sphere embedding (feasible for norm, usually for triangle, and
// for spreading when points spread out).
Embedding random_embedding(const Graph& g, int dim, uint64_t seed) {
    Embedding emb(dim, 1e-3);
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss(0, 1);
    std::vector<double> p(dim);
    for (int v : g.active_vertices()) {
        double n2 = 0;
        for (double& x : p) {
            x = gauss(rng);
            n2 += x * x;
        }
        double f = std::sqrt(0.5) / std::sqrt(n2);
        for (double& x : p) x *= f;
        emb.set_point(v, p);
    }
    return emb;
}

std::vector<int> range_vec(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

TEST_CASE("sdp_cost basics") {
    Graph g = Graph::from_edges(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)});
    Embedding same(2, 1e-3);
    std::vector<double> p = {std::sqrt(0.5), 0.0};
    for (int v = 0; v < 4; ++v) same.set_point(v, p);
    CHECK(sdp_cost(same, g) == doctest::Approx(0.0));

    // intended 2-point solution on a cut with c crossing edges costs exactly c
    Embedding intended = intended_embedding({0, 1}, {2, 3});
    CHECK(intended.dist2(0, 2) == doctest::Approx(1.0));
    CHECK(sdp_cost(intended, g) == doctest::Approx(2.0));  // edges (1,2) and (0,3) cross

    Embedding partial(2, 1e-3);
    partial.set_point(0, p);
    CHECK_THROWS(sdp_cost(partial, g));

    // single edge at a prescribed squared distance
    Graph one = Graph::from_edges(2, {Edge(0, 1)});
    Embedding e(1, 1e-3);
    e.set_point(0, {0.0});
    e.set_point(1, {std::sqrt(0.3)});
    CHECK(sdp_cost(e, one) == doctest::Approx(0.3));
}

TEST_CASE("edge_length and classify") {
    Embedding emb(2, 1e-3);
    std::vector<double> a = {std::sqrt(0.5), 0.0};
    std::vector<double> b = {0.0, std::sqrt(0.5)};
    emb.set_point(0, a);
    emb.set_point(1, a);
    emb.set_point(2, b);
    CHECK(edge_length(emb, 0, 1) == doctest::Approx(0.0));
    CHECK(classify(emb, 0, 1, 0.0) == EdgeClass::Short);
    CHECK(classify(emb, 0, 2, 1.0 / 24.0) == EdgeClass::Long);  // delta/2 with delta=1/12
    CHECK(edge_length(emb, 0, 2) == doctest::Approx(1.0));
    // boundary: threshold equal to the length counts as short (exact values)
    Embedding exact(1, 1e-3);
    exact.set_point(5, {0.0});
    exact.set_point(6, {0.5});
    CHECK(exact.dist2(5, 6) == 0.25);
    CHECK(classify(exact, 5, 6, 0.25) == EdgeClass::Short);
    CHECK(classify(exact, 5, 6, 0.2499999) == EdgeClass::Long);
    CHECK_THROWS(edge_length(emb, 0, 9));
}

TEST_CASE("embedding dump format") {
    Embedding emb(2, 1e-3);
    emb.set_point(3, {0.5, 0.5});
    emb.set_point(1, {0.25, -0.25});
    std::string dump = emb.dump();
    CHECK(dump == "1 0.25 -0.25\n3 0.5 0.5\n");  // one line per vertex, ascending ids
}

TEST_CASE("extend_orthogonally") {
    Embedding emb = intended_embedding({0, 1}, {2});
    Embedding same = extend_orthogonally(emb, {});
    CHECK(same.size() == 3);

    Embedding ext = extend_orthogonally(emb, {5, 6});
    CHECK(ext.dist2(5, 0) == doctest::Approx(1.0));
    CHECK(ext.dist2(5, 2) == doctest::Approx(1.0));
    CHECK(ext.dist2(5, 6) == doctest::Approx(1.0));
    CHECK(ext.norm2(5) == doctest::Approx(0.5));
    CHECK_THROWS(extend_orthogonally(emb, {0}));  // already embedded
}

TEST_CASE("check_feasibility on reference embeddings") {
    Graph g = two_cliques(8);
    Embedding intended = intended_embedding(range_vec(0, 4), range_vec(4, 8));
    ViolationReport rep = check_feasibility(intended, g, 8);
    CHECK(rep.max_norm_violation == doctest::Approx(0.0));
    CHECK(rep.max_spreading_violation == doctest::Approx(0.0));
    CHECK(rep.max_triangle_violation == doctest::Approx(0.0));

    // all points equal: spreading violation is exactly n/2
    Embedding same(2, 1e-3);
    std::vector<double> p = {std::sqrt(0.5), 0.0};
    for (int v = 0; v < 8; ++v) same.set_point(v, p);
    ViolationReport rep2 = check_feasibility(same, g, 8);
    CHECK(rep2.max_spreading_violation == doctest::Approx(4.0));

    // l2^2-collinear (right angle at the midpoint): exact equality, zero violation
    Embedding line(2, 1e-3);
    double r = std::sqrt(0.5);
    line.set_point(0, {r, 0.0});
    line.set_point(1, {0.0, r});
    line.set_point(2, {-r, 0.0});
    Graph tri = Graph::from_edges(3, {Edge(0, 1), Edge(1, 2)});
    ViolationReport rep3 = check_feasibility(line, tri, 3);
    // d(0,2) = 2 = d(0,1) + d(1,2): the equality case
    CHECK(rep3.max_triangle_violation <= 1e-9);
}

TEST_CASE("check_feasibility samples triples above 300 vertices") {
    Graph g(310);
    Embedding emb = random_embedding(g, 8, 77);
    ViolationReport rep = check_feasibility(emb, g, 310);
    CHECK(rep.sampled);
    CHECK(rep.triples_checked > 900000);
    CHECK(rep.max_norm_violation <= 1e-12);  // points constructed on the sphere

    Graph small(120);
    Embedding emb2 = random_embedding(small, 8, 78);
    ViolationReport rep2 = check_feasibility(emb2, small, 120);
    CHECK_FALSE(rep2.sampled);
    CHECK(rep2.triples_checked == 120LL * 119 * 118 / 6);
}

TEST_CASE("solve: two disjoint K20 reaches near-zero cost") {
    Graph g = two_cliques(40);
    SdpParams params;
    params.seed = 7;
    SolveResult res = solve(g, 40, params);
    CHECK(res.converged);
    CHECK(res.cost <= 0.05);
    CHECK(res.report.max_norm_violation <= 1e-3);
    CHECK(res.report.max_spreading_violation <= 1e-3 * 40);
    CHECK(res.report.max_triangle_violation <= 1e-3);
}

TEST_CASE("solve: 4-cycle costs about 2") {
    Graph c4 = Graph::from_edges(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)});
    SdpParams params;
    params.seed = 11;
    SolveResult res = solve(c4, 4, params);
    // intended solution with sides {0,2},{1,3} cuts all 4 edges at cost... the
    // cheaper witness puts {0,1} vs {2,3}: cost 2
    CHECK(res.cost <= 2.0 + 4 * params.eps);
}

TEST_CASE("solve: warm start never worse than a feasible witness") {
    Graph g = two_cliques(24);
    // add a few crossing edges
    std::vector<Edge> edges = g.edges().edges();
    edges.emplace_back(0, 12);
    edges.emplace_back(1, 13);
    Graph f = Graph::from_edges(24, edges);
    Embedding witness = intended_embedding(range_vec(0, 12), range_vec(12, 24));
    double witness_cost = sdp_cost(witness, f);
    SdpParams params;
    params.seed = 3;
    SolveResult res = solve(f, 24, params, &witness);
    CHECK(res.converged);
    CHECK(res.cost <= witness_cost + 1e-9);
}

TEST_CASE("sdp_cost is edge-decomposable") {
    Graph g = random_graph(20, 0.3, 19);
    Embedding emb = random_embedding(g, 6, 20);
    double before = sdp_cost(emb, g);
    std::vector<Edge> all = g.edges().edges();
    EdgeSet remove(std::vector<Edge>(all.begin(), all.begin() + all.size() / 2));
    double removed_len = 0;
    for (const Edge& e : remove) removed_len += emb.dist2(e.u, e.v);
    Graph g2 = g.remove_edges(remove);
    CHECK(sdp_cost(emb, g2) == doctest::Approx(before - removed_len).epsilon(1e-10));
}

TEST_CASE("restriction monotonicity on nested subgraphs") {
    Graph g = random_graph(28, 0.25, 5);
    SdpParams params;
    params.seed = 5;
    SolveResult full = solve(g, 28, params);

    Rng rng = make_rng(55);
    std::vector<int> drop;
    for (int v = 0; v < 28; ++v)
        if (uniform_real(rng) < 0.25) drop.push_back(v);
    auto [sub, cut] = g.remove_vertices(drop);
    (void)cut;
    if (sub.active_count() >= 3) {
        SolveResult restricted = solve(sub, 28, params, &full.embedding);
        double restricted_cost = 0;
        for (int u : sub.active_vertices())
            for (int v : sub.neighbors(u))
                if (u < v) restricted_cost += full.embedding.dist2(u, v);
        CHECK(restricted.cost <=
              restricted_cost + params.eps * static_cast<double>(sub.edge_count()) + 1e-6);
    }
}

TEST_CASE("round_balanced basics") {
    Graph g = two_cliques(20);
    Embedding intended = intended_embedding(range_vec(0, 10), range_vec(10, 20));
    Cut cut = round_balanced(intended, g, 20, 0.75, 1);
    CHECK(cut.crossing_edges.empty());
    CHECK(std::max(cut.side_a.size(), cut.side_b.size()) == 10);

    // adding crossing edges: the planted cut is recovered at its exact cost
    std::vector<Edge> edges = g.edges().edges();
    edges.emplace_back(0, 10);
    edges.emplace_back(5, 15);
    edges.emplace_back(7, 19);
    Graph f = Graph::from_edges(20, edges);
    Cut cut2 = round_balanced(intended, f, 20, 0.75, 1);
    CHECK(cut2.crossing_edges.size() == 3);

    Graph tiny(2);
    Embedding e2 = intended_embedding({0}, {1});
    CHECK_THROWS(round_balanced(e2, tiny, 2, 0.75, 1));
}

TEST_CASE("round_balanced vs exhaustive optimum (measured D_eff)") {
    // Oracle: exhaustive minimum over balanced cuts, max side <= 3n/4.
    double worst_ratio = 1.0;
    int trials = 0;
    for (uint64_t seed = 1; trials < 50; ++seed) {
        Rng rng = make_rng(seed * 31);
        int n = uniform_int(rng, 8, 16);
        Graph g = random_graph(n, 0.35, seed * 17);
        if (g.edge_count() == 0) continue;
        ++trials;
        SdpParams params;
        params.seed = seed;
        params.max_outer = 25;
        SolveResult res = solve(g, n, params);
        Cut cut = round_balanced(res.embedding, g, n, 0.75, seed);

        long long best = -1;
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            int size = __builtin_popcount(mask);
            if (4 * std::max(size, n - size) > 3 * n) continue;
            long long cost = 0;
            for (const Edge& e : g.edges()) {
                bool ua = mask & (1u << e.u);
                bool va = mask & (1u << e.v);
                if (ua != va) ++cost;
            }
            if (best < 0 || cost < best) best = cost;
        }
        REQUIRE(best >= 0);
        double ratio = best == 0 ? (cut.crossing_edges.size() == 0 ? 1.0 : 1e9)
                                 : static_cast<double>(cut.crossing_edges.size()) /
                                       static_cast<double>(best);
        worst_ratio = std::max(worst_ratio, ratio);
    }
    // measured rounding factor D_eff stays below 3 on this family
    CHECK(worst_ratio <= 3.0);
    MESSAGE("measured D_eff = ", worst_ratio);
}
