#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "piecut/baselines.hpp"
#include "piecut/bench.hpp"
#include "piecut/defaults.hpp"
#include "piecut/graph.hpp"
#include "piecut/instance.hpp"
#include "piecut/maxflow.hpp"
#include "piecut/partition.hpp"
#include "piecut/rounding.hpp"
#include "piecut/score.hpp"
#include "piecut/sdp_solver.hpp"

namespace py = pybind11;
using namespace piecut;

namespace {

std::vector<Edge> edges_from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.emplace_back(u, v);
    return edges;
}

std::vector<std::pair<int, int>> pairs_from_set(const EdgeSet& es) {
    std::vector<std::pair<int, int>> out;
    out.reserve(es.size());
    for (const Edge& e : es) out.emplace_back(e.u, e.v);
    return out;
}

py::dict cut_to_dict(const Cut& cut) {
    py::dict d;
    d["side_a"] = cut.side_a;
    d["side_b"] = cut.side_b;
    d["crossing"] = pairs_from_set(cut.crossing_edges);
    return d;
}

py::dict result_to_dict(const PartitionResult& res) {
    py::dict d;
    d["cut_cost"] = res.cut_cost;
    d["pieces"] = res.pieces;
    d["side_a"] = res.final_cut.side_a;
    d["side_b"] = res.final_cut.side_b;
    d["degraded"] = res.degraded;
    d["used_fallback"] = res.used_fallback;
    d["runtime_ms"] = res.runtime_ms;
    d["d_used"] = res.d_used;
    d["failed_checks"] = res.failed_checks();
    py::list trace;
    for (const auto& row : res.trace) {
        py::dict r;
        r["t"] = row.t;
        r["sdp_cost"] = row.sdp_cost;
        r["long_cut"] = row.long_cut;
        r["heavy_components"] = row.heavy_components;
        r["heavy_cut"] = row.heavy_cut;
        r["damage_y_size"] = row.damage_y_size;
        r["damage_cut"] = row.damage_cut;
        r["total_budget"] = row.total_budget;
        r["active_n"] = row.active_n;
        trace.append(r);
    }
    d["trace"] = trace;
    return d;
}

AlgoParams params_from_kwargs(double K, double C, int T, uint64_t seed, double eps,
                              bool strict) {
    AlgoParams p;
    p.K = K;
    p.C = C;
    p.T = T;
    p.seed = seed;
    p.sdp.eps = eps;
    p.sdp.seed = seed;
    p.strict = strict;
    return p;
}

}  // namespace

PYBIND11_MODULE(_piecut, m) {
    m.doc() = "planted balanced-cut toolkit (PIE instances, SDP pipeline, baselines)";

    py::class_<Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("n"))
        .def_static("from_edges",
                    [](int n, const std::vector<std::pair<int, int>>& pairs) {
                        return Graph::from_edges(n, edges_from_pairs(pairs));
                    })
        .def_property_readonly("n_total", &Graph::n_total)
        .def_property_readonly("active_count", &Graph::active_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree)
        .def("neighbors", [](const Graph& g, int v) { return g.neighbors(v); })
        .def("active_vertices", &Graph::active_vertices)
        .def("edges", [](const Graph& g) { return pairs_from_set(g.edges()); })
        .def("edge_boundary",
             [](const Graph& g, const std::vector<int>& s) {
                 return pairs_from_set(g.edge_boundary(s));
             })
        .def("remove_vertices",
             [](const Graph& g, const std::vector<int>& s) {
                 auto [h, cut] = g.remove_vertices(s);
                 return py::make_tuple(h, pairs_from_set(cut));
             })
        .def("remove_edges", [](const Graph& g, const std::vector<std::pair<int, int>>& es) {
            return g.remove_edges(EdgeSet(edges_from_pairs(es)));
        });

    m.def("sample_pi", &sample_pi, py::arg("n"), py::arg("seed"));
    m.def("compose", &compose);
    m.def(
        "generate",
        [](int n, const std::string& g_model, int g_degree, const std::string& h_model,
           double h_avg_degree, double h_q, int h_pa_m, uint64_t seed) {
            GeneratorSpec spec;
            spec.n = n;
            spec.g_model = g_model_from_string(g_model);
            spec.g_degree = g_degree;
            spec.h_model = h_model_from_string(h_model);
            spec.h_avg_degree = h_avg_degree;
            spec.h_q = h_q;
            spec.h_pa_m = h_pa_m;
            spec.seed = seed;
            PlantedInstance inst = generate(spec);
            py::dict d;
            d["graph"] = inst.f;
            d["left"] = inst.left;
            d["right"] = inst.right;
            d["pi"] = inst.pi;
            d["planted_edges"] = pairs_from_set(inst.planted_edges);
            d["noise_edges"] = pairs_from_set(inst.noise_image);
            d["overlap_count"] = inst.overlap_count;
            return d;
        },
        py::arg("n"), py::arg("g_model") = "two-random-regular", py::arg("g_degree") = 8,
        py::arg("h_model") = "erdos-renyi", py::arg("h_avg_degree") = 4.0,
        py::arg("h_q") = 0.5, py::arg("h_pa_m") = 2, py::arg("seed") = 1);

    m.def("check_property3", &check_property3);
    m.def("compute_d", &compute_d);

    m.def(
        "solve_sdp",
        [](const Graph& g, int n_total, double eps, uint64_t seed) {
            SdpParams params;
            params.eps = eps;
            params.seed = seed;
            SolveResult res = solve(g, n_total, params);
            py::dict d;
            d["cost"] = res.cost;
            d["converged"] = res.converged;
            d["max_norm_violation"] = res.report.max_norm_violation;
            d["max_spreading_violation"] = res.report.max_spreading_violation;
            d["max_triangle_violation"] = res.report.max_triangle_violation;
            py::dict points;
            for (int v : res.embedding.vertices()) {
                const double* p = res.embedding.point(v);
                points[py::int_(v)] =
                    std::vector<double>(p, p + res.embedding.dim());
            }
            d["points"] = points;
            return d;
        },
        py::arg("graph"), py::arg("n_total"), py::arg("eps") = defaults::solver_eps,
        py::arg("seed") = 1);

    m.def(
        "min_cut",
        [](const Graph& g, const std::vector<long long>& budgets, double beta_d) {
            FlowNetwork net = build_damage_network(g, budgets, beta_d);
            long long total = net.total_budget_scaled;
            MinCutResult mc = min_cut(std::move(net));
            py::dict d;
            d["source_side"] = mc.source_side;
            d["cut_value"] = mc.cut_value;
            d["delta"] = static_cast<double>(total - mc.cut_value_scaled) /
                         static_cast<double>(kFlowScale);
            return d;
        },
        py::arg("graph"), py::arg("budgets"), py::arg("beta_d"));

    m.def(
        "run",
        [](const Graph& f, double d, double K, double C, int T, uint64_t seed, double eps,
           bool strict) {
            return result_to_dict(run(f, params_from_kwargs(K, C, T, seed, eps, strict), d));
        },
        py::arg("graph"), py::arg("d"), py::arg("K") = defaults::K_eff,
        py::arg("C") = defaults::C_eff, py::arg("T") = 0, py::arg("seed") = 1,
        py::arg("eps") = defaults::solver_eps, py::arg("strict") = false);

    m.def(
        "run_blind",
        [](const Graph& f, double K, double C, int T, uint64_t seed, double eps) {
            return result_to_dict(
                run_blind(f, params_from_kwargs(K, C, T, seed, eps, false)));
        },
        py::arg("graph"), py::arg("K") = defaults::K_eff, py::arg("C") = defaults::C_eff,
        py::arg("T") = 0, py::arg("seed") = 1, py::arg("eps") = defaults::solver_eps);

    m.def("simple_degree_cut", [](const Graph& f, double alpha, double d) {
        return result_to_dict(simple_degree_cut(f, alpha, d));
    });

    m.def("baseline_spectral", [](const Graph& f) { return cut_to_dict(baseline_spectral(f)); });
    m.def("baseline_random", [](const Graph& f, uint64_t seed) {
        return cut_to_dict(baseline_random(f, seed));
    });

    m.attr("K_eff") = defaults::K_eff;
    m.attr("C_eff") = defaults::C_eff;
    m.attr("solver_eps") = defaults::solver_eps;
}
