#include "piecut/score.hpp"

#include <algorithm>

#include "piecut/baselines.hpp"

namespace piecut {

ScoreReport evaluate(const PartitionResult& result, const PlantedInstance& inst,
                     const ScoreOptions& opts) {
    const Graph& f = inst.f;
    const int n = f.n_total();

    std::vector<int> cover(n, 0);
    for (const auto& piece : result.pieces)
        for (int v : piece) {
            if (v < 0 || v >= n) throw std::invalid_argument("evaluate: bad vertex in pieces");
            ++cover[v];
        }
    for (int v = 0; v < n; ++v)
        if (cover[v] != 1)
            throw std::invalid_argument("evaluate: pieces do not partition the vertex set");

    ScoreReport rep;
    EdgeSet crossing = crossing_edges_of(f, result.final_cut.side_a, result.final_cut.side_b);
    rep.cut_cost = static_cast<long long>(crossing.size());
    rep.reported_cut_cost = result.cut_cost;
    rep.cost_check_ok = rep.cut_cost == rep.reported_cut_cost;

    rep.noise_budget = static_cast<long long>(inst.noise_image.size());
    std::vector<char> in_left(n, 0);
    for (int v : inst.left) in_left[v] = 1;
    for (const Edge& e : inst.noise_image)
        if (in_left[e.u] != in_left[e.v]) ++rep.crossing_noise;
    rep.ratio = static_cast<double>(rep.cut_cost) /
                static_cast<double>(std::max<long long>(rep.crossing_noise, 1));

    size_t min_side = std::min(result.final_cut.side_a.size(), result.final_cut.side_b.size());
    rep.balance = static_cast<double>(min_side) / static_cast<double>(n);

    if (opts.run_baselines) {
        rep.spectral_cost = static_cast<long long>(baseline_spectral(f).crossing_edges.size());
        rep.random_cost =
            static_cast<long long>(baseline_random(f, opts.seed).crossing_edges.size());
    }
    if (opts.alpha > 0 && opts.d > 0) {
        rep.property3 = check_property3(f, opts.alpha, opts.d);
        rep.property4 = check_property4(inst, opts.alpha, opts.beta, opts.d).pass();
    }
    rep.failed_invariants = static_cast<int>(result.failed_checks().size());
    rep.degraded = result.degraded;
    rep.used_fallback = result.used_fallback;
    rep.runtime_ms = result.runtime_ms;
    return rep;
}

}  // namespace piecut
