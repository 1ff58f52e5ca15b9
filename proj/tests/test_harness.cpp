#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "piecut/baselines.hpp"
#include "piecut/bench.hpp"
#include "piecut/score.hpp"

using namespace piecut;

namespace {

AlgoParams harness_params(uint64_t seed) {
    AlgoParams p;
    p.seed = seed;
    p.sdp.seed = seed;
    p.strict = false;
    p.damage_check_samples = 100;
    return p;
}

}  // namespace

TEST_CASE("baseline_spectral") {
    // two disjoint K4s: the planted split at cost 0
    Graph g = make_two_cliques(8);
    Cut cut = baseline_spectral(g);
    CHECK(cut.crossing_edges.empty());
    CHECK(cut.side_a.size() == 4);

    // path P4: middle edge
    Graph p4 = Graph::from_edges(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
    Cut cut2 = baseline_spectral(p4);
    CHECK(cut2.crossing_edges.size() == 1);
    CHECK(cut2.crossing_edges.contains(Edge(1, 2)));

    // K_{2,2}: every balanced cut costs at least 2 (exhaustive over 3 splits)
    Graph k22 = make_bipartite_crossing(4, 1.0, 1);
    Cut cut3 = baseline_spectral(k22);
    CHECK(cut3.crossing_edges.size() >= 2);
    CHECK(cut3.side_a.size() == 2);
}

TEST_CASE("baseline_random") {
    Graph empty(10);
    CHECK(baseline_random(empty, 5).crossing_edges.empty());

    Graph g = make_two_cliques(12);
    Cut a = baseline_random(g, 9);
    Cut b = baseline_random(g, 9);
    CHECK(a.side_a == b.side_a);  // deterministic per seed
    Cut c = baseline_random(g, 10);
    CHECK((a.side_a != c.side_a || a.side_b == c.side_b));

    // mean over seeds approaches the exact expectation m*(n/2)/(n-1)
    Graph two = make_two_cliques(128);
    double expect = expected_random_bisection_cost(two);
    CHECK(expect == doctest::Approx(4032.0 * 2.0 * 64.0 * 64.0 / (128.0 * 127.0)));
    double mean = 0;
    const int draws = 120;
    for (int s = 0; s < draws; ++s)
        mean += static_cast<double>(baseline_random(two, 100 + s).crossing_edges.size());
    mean /= draws;
    double sigma_mean = std::sqrt(expect) / std::sqrt(static_cast<double>(draws));
    CHECK(std::fabs(mean - expect) <= 6.0 * sigma_mean + 1.0);
}

TEST_CASE("evaluate") {
    GeneratorSpec spec;
    spec.n = 24;
    spec.g_model = GModel::TwoCliques;
    spec.h_model = HModel::ErdosRenyi;
    spec.h_avg_degree = 0.0;
    spec.seed = 8;
    PlantedInstance inst = generate(spec);
    AlgoParams params = harness_params(8);
    PartitionResult res = run(inst.f, params, 6.0);

    ScoreOptions opts;
    opts.alpha = params.alpha();
    opts.beta = params.beta();
    opts.d = 6.0;
    ScoreReport rep = evaluate(res, inst, opts);
    CHECK(rep.cut_cost == 0);
    CHECK(rep.ratio == doctest::Approx(0.0));
    CHECK(rep.cost_check_ok);
    CHECK(rep.balance == doctest::Approx(0.5));

    // piece cover mismatch -> error
    PartitionResult broken = res;
    broken.pieces[0].pop_back();
    CHECK_THROWS(evaluate(broken, inst, opts));

    // random bisection on two cliques is far above the planted 0
    CHECK(rep.random_cost > 10);
}

TEST_CASE("audit: edgeless graph vacuously passes") {
    Graph empty(12);
    AlgoParams params = harness_params(2);
    InvariantAuditReport rep = audit(empty, params, 48.0);
    CHECK(rep.all_pass);
    CHECK(!rep.checks.empty());
}

TEST_CASE("audit: benchmark instance respects the long-edge cut bound") {
    GeneratorSpec spec;
    spec.n = 64;
    spec.g_model = GModel::TwoRandomRegular;
    spec.g_degree = 6;
    spec.h_model = HModel::ErdosRenyi;
    spec.h_avg_degree = 3.0;
    spec.seed = 12;
    PlantedInstance inst = generate(spec);
    AlgoParams params = harness_params(12);
    double d = compute_d(static_cast<long long>(inst.noise_image.size()), 64, params.C);
    InvariantAuditReport rep = audit(inst.f, params, d);
    bool saw_long_edge_bound = false;
    for (const auto& c : rep.checks)
        if (c.name == "long_edge_cut_bound") {
            saw_long_edge_bound = true;
            CHECK(c.pass);
        }
    CHECK(saw_long_edge_bound);
}

TEST_CASE("bench config parsing and a tiny grid") {
    ExperimentConfig cfg = parse_experiment_config(
        "n = 32\nseeds = 1..2\ng_model = two-random-regular\ng_degree = 4\n"
        "h_model = erdos-renyi\nh_avg_degree = 2\nK = 5e-5\nC = 0.005\nout =\n"
        "baselines = 1\nworkers = 2\n");
    CHECK(cfg.ns == std::vector<int>{32});
    CHECK(cfg.seeds.size() == 2);
    cfg.out_dir.clear();
    BenchOutput out = run_bench(cfg);
    CHECK(out.rows.size() == 2);
    for (const auto& row : out.rows) {
        CHECK(row.balance >= 0.25);
        CHECK(row.failed_invariants == 0);
        CHECK(row.sdp_trace_monotone);
    }
    CHECK(out.csv.find("seed,n,d,h_model") == 0);
    CHECK_THROWS(parse_experiment_config("seeds =\n"));
}

TEST_CASE("result json carries the documented fields") {
    Graph g = make_two_cliques(16);
    AlgoParams params = harness_params(6);
    PartitionResult res = run(g, params, 4.0);
    auto j = result_to_json(res, params);
    CHECK(j.contains("cut_cost"));
    CHECK(j.contains("balance"));
    CHECK(j.contains("pieces"));
    CHECK(j.contains("iterations"));
    CHECK(j.contains("params"));
    CHECK(j.contains("degraded"));
    CHECK(j.contains("runtime_ms"));
    for (const auto& row : j["iterations"]) {
        CHECK(row.contains("sdp_cost"));
        CHECK(row.contains("long_cut"));
        CHECK(row.contains("total_budget"));
        CHECK(row.contains("active_n"));
    }
}
