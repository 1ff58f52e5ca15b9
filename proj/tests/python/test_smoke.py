import os
import sys

_module_dir = os.environ.get("PIECUT_MODULE_DIR")
if _module_dir:
    sys.path.insert(0, _module_dir)
_pkg_dir = os.environ.get("PIECUT_PKG_DIR")
if _pkg_dir:
    sys.path.insert(0, _pkg_dir)

import piecut


def test_graph_roundtrip():
    g = piecut.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edge_count == 3
    assert g.degree(1) == 2
    assert g.edge_boundary([0, 1]) == [(1, 2)]
    h, cut = g.remove_vertices([3])
    assert h.active_count == 3
    assert cut == [(2, 3)]


def test_generate_and_run():
    inst = piecut.generate(n=64, g_degree=6, h_avg_degree=3.0, seed=5)
    g = inst["graph"]
    assert g.n_total == 64
    assert len(inst["left"]) == 32
    # no planted edge crosses the hidden cut
    left = set(inst["left"])
    for (u, v) in inst["planted_edges"]:
        assert (u in left) == (v in left)

    d = piecut.compute_d(len(inst["noise_edges"]), 64, piecut.C_eff)
    res = piecut.run(g, d, seed=5)
    assert res["cut_cost"] >= 0
    assert not res["failed_checks"]
    assert min(len(res["side_a"]), len(res["side_b"])) >= 64 // 4


def test_min_cut_exact():
    g = piecut.Graph(1)
    out = piecut.min_cut(g, [10], 3.0)  # isolated vertex, budget 10, 2bd = 6
    assert out["source_side"] == [0]
    assert abs(out["delta"] - 4.0) < 1e-9


def test_sdp_two_cliques():
    edges = []
    for s in range(2):
        for i in range(8):
            for j in range(i + 1, 8):
                edges.append((s * 8 + i, s * 8 + j))
    g = piecut.Graph.from_edges(16, edges)
    out = piecut.solve_sdp(g, 16, seed=3)
    assert out["converged"]
    assert out["cost"] <= 0.05


def test_sample_pi_sides():
    pi = piecut.sample_pi(8, 1)
    assert sorted(pi) == list(range(8))
    assert all(v < 4 for v in pi[:4])


def test_baselines():
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i + 4, j + 4) for i in range(4) for j in range(i + 1, 4)]
    g = piecut.Graph.from_edges(8, edges)
    spec = piecut.baseline_spectral(g)
    assert len(spec["crossing"]) == 0
    rnd = piecut.baseline_random(g, 7)
    assert len(rnd["side_a"]) == 4
