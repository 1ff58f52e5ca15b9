#include "piecut/instance.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "piecut/rng.hpp"

namespace piecut {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(GModel m) {
    switch (m) {
        case GModel::TwoRandomRegular: return "two-random-regular";
        case GModel::TwoGrids: return "two-grids";
        case GModel::TwoCliques: return "two-cliques";
        case GModel::File: return "file";
    }
    return "?";
}

std::string to_string(HModel m) {
    switch (m) {
        case HModel::ErdosRenyi: return "erdos-renyi";
        case HModel::BipartiteCrossing: return "bipartite-crossing";
        case HModel::PreferentialAttachment: return "preferential-attachment";
        case HModel::File: return "file";
    }
    return "?";
}

GModel g_model_from_string(const std::string& s) {
    if (s == "two-random-regular") return GModel::TwoRandomRegular;
    if (s == "two-grids") return GModel::TwoGrids;
    if (s == "two-cliques") return GModel::TwoCliques;
    if (s == "file") return GModel::File;
    throw std::invalid_argument("unknown g_model: " + s);
}

HModel h_model_from_string(const std::string& s) {
    if (s == "erdos-renyi") return HModel::ErdosRenyi;
    if (s == "bipartite-crossing") return HModel::BipartiteCrossing;
    if (s == "preferential-attachment") return HModel::PreferentialAttachment;
    if (s == "file") return HModel::File;
    throw std::invalid_argument("unknown h_model: " + s);
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    GeneratorSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            auto last = s.find_last_not_of(" \t\r");
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "n") spec.n = std::stoi(val);
        else if (key == "g_model") spec.g_model = g_model_from_string(val);
        else if (key == "g_degree") spec.g_degree = std::stoi(val);
        else if (key == "g_file") spec.g_file = val;
        else if (key == "h_model") spec.h_model = h_model_from_string(val);
        else if (key == "h_avg_degree") spec.h_avg_degree = std::stod(val);
        else if (key == "h_q") spec.h_q = std::stod(val);
        else if (key == "h_pa_m") spec.h_pa_m = std::stoi(val);
        else if (key == "h_file") spec.h_file = val;
        else if (key == "seed") spec.seed = std::stoull(val);
        else throw std::invalid_argument("unknown generator key: " + key);
    }
    return spec;
}

GeneratorSpec read_generator_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_generator_spec(ss.str());
}

std::vector<int> sample_pi(int n, uint64_t seed) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("sample_pi: n must be positive even");
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    Rng rng = make_rng(derive_seed(seed, 0xA1));
    int half = n / 2;
    // Fisher-Yates within each side keeps pi in Pi_LR and uniform over it.
    for (int i = half - 1; i > 0; --i) std::swap(pi[i], pi[uniform_int(rng, 0, i)]);
    for (int i = half - 1; i > 0; --i)
        std::swap(pi[half + i], pi[half + uniform_int(rng, 0, i)]);
    return pi;
}

Graph compose(const Graph& g, const Graph& h, const std::vector<int>& pi) {
    if (g.n_total() != h.n_total() || static_cast<int>(pi.size()) != g.n_total())
        throw std::invalid_argument("compose: size mismatch");
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) edges.push_back(e);
    for (const Edge& e : h.edges()) edges.emplace_back(pi[e.u], pi[e.v]);
    return Graph::from_edges(g.n_total(), edges);
}

Graph make_two_cliques(int n) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("two-cliques: even n required");
    std::vector<Edge> edges;
    int half = n / 2;
    for (int s = 0; s < 2; ++s) {
        int base = s * half;
        for (int i = 0; i < half; ++i)
            for (int j = i + 1; j < half; ++j) edges.emplace_back(base + i, base + j);
    }
    return Graph::from_edges(n, edges);
}

Graph make_two_grids(int n) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("two-grids: even n required");
    int half = n / 2;
    int a = static_cast<int>(std::sqrt(static_cast<double>(half)));
    while (a > 1 && half % a != 0) --a;
    int b = half / a;
    std::vector<Edge> edges;
    for (int s = 0; s < 2; ++s) {
        int base = s * half;
        auto id = [&](int r, int c) { return base + r * b + c; };
        for (int r = 0; r < a; ++r)
            for (int c = 0; c < b; ++c) {
                if (c + 1 < b) edges.emplace_back(id(r, c), id(r, c + 1));
                if (r + 1 < a) edges.emplace_back(id(r, c), id(r + 1, c));
            }
    }
    return Graph::from_edges(n, edges);
}

namespace {

// Incremental stub matching (Steger-Wormald style): pair random stubs,
// rejecting loops and repeats, restarting when stuck.
std::vector<Edge> random_regular_on(const std::vector<int>& ids, int degree, Rng& rng) {
    int k = static_cast<int>(ids.size());
    if (degree >= k) throw std::invalid_argument("regular degree >= side size");
    if ((static_cast<long long>(degree) * k) % 2 != 0)
        throw std::invalid_argument("regular model: degree * (n/2) must be even");
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(k) * degree);
        for (int i = 0; i < k; ++i)
            for (int d = 0; d < degree; ++d) stubs.push_back(i);
        std::vector<Edge> edges;
        std::set<std::pair<int, int>> seen;
        bool stuck = false;
        while (!stubs.empty()) {
            bool placed = false;
            for (int tries = 0; tries < 200; ++tries) {
                int ia = uniform_int(rng, 0, static_cast<int>(stubs.size()) - 1);
                int ib = uniform_int(rng, 0, static_cast<int>(stubs.size()) - 1);
                if (ia == ib) continue;
                int a = stubs[ia], b = stubs[ib];
                if (a == b) continue;
                auto key = std::minmax(a, b);
                if (seen.count(key)) continue;
                seen.insert(key);
                edges.emplace_back(ids[a], ids[b]);
                if (ia < ib) std::swap(ia, ib);
                stubs.erase(stubs.begin() + ia);
                stubs.erase(stubs.begin() + ib);
                placed = true;
                break;
            }
            if (!placed) {
                stuck = true;
                break;
            }
        }
        if (!stuck) return edges;
    }
    throw std::runtime_error("random regular: failed to produce a simple graph");
}

}  // namespace

Graph make_two_random_regular(int n, int degree, uint64_t seed) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("two-random-regular: even n required");
    if (degree >= n / 2)
        throw std::invalid_argument("two-random-regular: degree must be < n/2");
    Rng rng = make_rng(derive_seed(seed, 0xB2));
    int half = n / 2;
    std::vector<int> left(half), right(half);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), half);
    std::vector<Edge> edges = random_regular_on(left, degree, rng);
    std::vector<Edge> r = random_regular_on(right, degree, rng);
    edges.insert(edges.end(), r.begin(), r.end());
    return Graph::from_edges(n, edges);
}

Graph make_erdos_renyi(int n, double avg_degree, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("erdos-renyi: n >= 2 required");
    double p = avg_degree / static_cast<double>(n - 1);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos-renyi: probability out of range");
    Rng rng = make_rng(derive_seed(seed, 0xC3));
    std::vector<Edge> edges;
    // geometric skipping over the C(n,2) pair stream
    if (p > 0.0) {
        double logq = std::log1p(-p);
        long long total = static_cast<long long>(n) * (n - 1) / 2;
        long long idx = -1;
        while (true) {
            double r = uniform_real(rng);
            long long skip = p >= 1.0 ? 1
                : 1 + static_cast<long long>(std::floor(std::log1p(-r) / logq));
            idx += skip;
            if (idx >= total) break;
            // pair index -> (u, v)
            long long u = 0;
            long long rem = idx;
            long long row = n - 1;
            while (rem >= row) { rem -= row; --row; ++u; }
            long long v = u + 1 + rem;
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
    }
    return Graph::from_edges(n, edges);
}

Graph make_bipartite_crossing(int n, double q, uint64_t seed) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("bipartite-crossing: even n required");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("bipartite-crossing: q out of range");
    Rng rng = make_rng(derive_seed(seed, 0xD4));
    int half = n / 2;
    std::vector<Edge> edges;
    for (int u = 0; u < half; ++u)
        for (int v = half; v < n; ++v)
            if (uniform_real(rng) < q) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph make_preferential_attachment(int n, int m, uint64_t seed) {
    if (m < 1) throw std::invalid_argument("preferential-attachment: m >= 1 required");
    if (n <= m) throw std::invalid_argument("preferential-attachment: n must exceed m");
    Rng rng = make_rng(derive_seed(seed, 0xE5));
    std::vector<Edge> edges;
    std::vector<int> endpoint_pool;  // vertex repeated once per incident edge
    // seed star on vertices 0..m keeps early degrees positive
    for (int v = 1; v <= m; ++v) {
        edges.emplace_back(0, v);
        endpoint_pool.push_back(0);
        endpoint_pool.push_back(v);
    }
    for (int v = m + 1; v < n; ++v) {
        std::set<int> targets;
        int guard = 0;
        while (static_cast<int>(targets.size()) < m && guard++ < 50 * m) {
            int t = endpoint_pool[uniform_int(rng, 0, static_cast<int>(endpoint_pool.size()) - 1)];
            if (t != v) targets.insert(t);
        }
        for (int t : targets) {
            edges.emplace_back(v, t);
            endpoint_pool.push_back(v);
            endpoint_pool.push_back(t);
        }
    }
    return Graph::from_edges(n, edges);
}

std::vector<int> PlantedInstance::noise_degrees() const {
    std::vector<int> deg(f.n_total(), 0);
    for (const Edge& e : noise_image) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

bool PlantedInstance::is_left(int v) const {
    return std::binary_search(left.begin(), left.end(), v);
}

PlantedInstance generate(const GeneratorSpec& spec) {
    if (spec.n <= 0 || spec.n % 2 != 0)
        throw std::invalid_argument("generate: n must be positive even");
    const int n = spec.n;

    Graph g(0);
    switch (spec.g_model) {
        case GModel::TwoRandomRegular:
            g = make_two_random_regular(n, spec.g_degree, spec.seed);
            break;
        case GModel::TwoGrids: g = make_two_grids(n); break;
        case GModel::TwoCliques: g = make_two_cliques(n); break;
        case GModel::File: g = read_edge_list_file(spec.g_file); break;
    }
    if (g.n_total() != n) throw std::invalid_argument("generate: planted graph size mismatch");

    Graph h(0);
    switch (spec.h_model) {
        case HModel::ErdosRenyi:
            h = make_erdos_renyi(n, spec.h_avg_degree, derive_seed(spec.seed, 7));
            break;
        case HModel::BipartiteCrossing:
            h = make_bipartite_crossing(n, spec.h_q, derive_seed(spec.seed, 7));
            break;
        case HModel::PreferentialAttachment:
            h = make_preferential_attachment(n, spec.h_pa_m, derive_seed(spec.seed, 7));
            break;
        case HModel::File: h = read_edge_list_file(spec.h_file); break;
    }
    if (h.n_total() != n) throw std::invalid_argument("generate: noise graph size mismatch");

    PlantedInstance inst;
    inst.seed = spec.seed;
    inst.params = spec;
    inst.left.resize(n / 2);
    inst.right.resize(n / 2);
    std::iota(inst.left.begin(), inst.left.end(), 0);
    std::iota(inst.right.begin(), inst.right.end(), n / 2);

    // no planted edge may cross (L, R)
    for (const Edge& e : g.edges())
        if ((e.u < n / 2) != (e.v < n / 2))
            throw std::logic_error("generate: planted edge crosses the planted cut");

    inst.pi = sample_pi(n, derive_seed(spec.seed, 13));
    inst.planted_edges = g.edges();
    std::vector<Edge> image;
    for (const Edge& e : h.edges()) image.emplace_back(inst.pi[e.u], inst.pi[e.v]);
    inst.noise_image = EdgeSet(std::move(image));

    std::vector<Edge> noise_only;
    int overlap = 0;
    for (const Edge& e : inst.noise_image) {
        if (inst.planted_edges.contains(e)) ++overlap;
        else noise_only.push_back(e);
    }
    inst.noise_edges = EdgeSet(std::move(noise_only));
    inst.overlap_count = overlap;
    inst.f = compose(g, h, inst.pi);
    return inst;
}

bool check_property3(const Graph& f, double alpha, double d) {
    if (d <= 0) throw std::invalid_argument("check_property3: d must be positive");
    const double threshold = alpha * d;
    long long low = 0;
    for (int v : f.active_vertices())
        if (static_cast<double>(f.degree(v)) < threshold) ++low;
    return static_cast<double>(low) <= static_cast<double>(f.n_total()) / alpha;
}

Property4Report check_property4(const PlantedInstance& inst, double alpha, double beta,
                                double d) {
    const int n = inst.f.n_total();
    const std::vector<int> hdeg = inst.noise_degrees();

    // VG<=alpha uses the same strict "<" convention as Property 3.
    std::vector<char> in_vg(n, 0), in_vh(n, 0);
    std::vector<int> gdeg(n, 0);
    for (const Edge& e : inst.planted_edges) {
        ++gdeg[e.u];
        ++gdeg[e.v];
    }
    for (int v = 0; v < n; ++v) {
        in_vg[v] = static_cast<double>(gdeg[v]) < alpha * d;
        in_vh[v] = static_cast<double>(hdeg[v]) >= beta * d;
    }

    std::vector<std::vector<int>> noise_adj(n);
    for (const Edge& e : inst.noise_image) {
        noise_adj[e.u].push_back(e.v);
        noise_adj[e.v].push_back(e.u);
    }

    Property4Report rep;
    rep.checked = n;
    const double log_term = 4.0 * std::log2(static_cast<double>(n));
    for (int u = 0; u < n; ++u) {
        double lhs = 0.0, rhs_sum = 0.0;
        for (int v : noise_adj[u]) {
            if (!in_vh[v]) continue;
            double w = beta * d / static_cast<double>(hdeg[v]);
            if (in_vg[v]) lhs += w;
            else rhs_sum += w;
        }
        double rhs = (8.0 / alpha) * rhs_sum + log_term;
        rep.worst_margin = std::max(rep.worst_margin, lhs - rhs);
        if (lhs > rhs) rep.violating.push_back(u);
    }
    return rep;
}

void write_instance_bundle(const PlantedInstance& inst, const std::string& dir) {
    fs::create_directories(dir);
    write_edge_list_file(inst.f, (fs::path(dir) / "graph.edges").string());

    auto write_set = [&](const EdgeSet& es, const std::string& name) {
        std::ofstream out(fs::path(dir) / name);
        out << inst.f.n_total() << ' ' << es.size() << '\n';
        for (const Edge& e : es) out << e.u << ' ' << e.v << '\n';
    };
    write_set(inst.planted_edges, "planted.edges");
    write_set(inst.noise_edges, "noise.edges");

    json truth;
    truth["n"] = inst.f.n_total();
    truth["seed"] = inst.seed;
    truth["left"] = inst.left;
    truth["planted_edges"] = {{"count", inst.planted_edges.size()}, {"file", "planted.edges"}};
    truth["noise_edges"] = {{"file", "noise.edges"}};
    truth["pi"] = inst.pi;
    truth["overlap_count"] = inst.overlap_count;
    json params;
    params["n"] = inst.params.n;
    params["g_model"] = to_string(inst.params.g_model);
    params["g_degree"] = inst.params.g_degree;
    params["h_model"] = to_string(inst.params.h_model);
    params["h_avg_degree"] = inst.params.h_avg_degree;
    params["h_q"] = inst.params.h_q;
    params["h_pa_m"] = inst.params.h_pa_m;
    params["seed"] = inst.params.seed;
    truth["generator_params"] = params;
    // overlap edges kept explicitly so bundles reconstruct pi(E_H) losslessly
    json overlaps = json::array();
    for (const Edge& e : inst.noise_image)
        if (inst.planted_edges.contains(e)) overlaps.push_back({e.u, e.v});
    truth["overlap_edges"] = overlaps;

    std::ofstream out(fs::path(dir) / "truth.json");
    out << truth.dump(2) << '\n';
}

PlantedInstance read_instance_bundle(const std::string& dir) {
    PlantedInstance inst;
    inst.f = read_edge_list_file((fs::path(dir) / "graph.edges").string());

    std::ifstream tin(fs::path(dir) / "truth.json");
    if (!tin) throw std::runtime_error("cannot open truth.json in " + dir);
    json truth = json::parse(tin);

    inst.seed = truth["seed"].get<uint64_t>();
    inst.left = truth["left"].get<std::vector<int>>();
    inst.pi = truth["pi"].get<std::vector<int>>();
    inst.overlap_count = truth["overlap_count"].get<int>();
    const int n = truth["n"].get<int>();
    if (n != inst.f.n_total()) throw std::runtime_error("truth.json: n mismatch");
    std::vector<char> in_left(n, 0);
    for (int v : inst.left) in_left[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!in_left[v]) inst.right.push_back(v);

    auto read_set = [&](const std::string& name) {
        std::ifstream in(fs::path(dir) / name);
        if (!in) throw std::runtime_error("cannot open " + name);
        int nn;
        size_t m;
        in >> nn >> m;
        std::vector<Edge> edges;
        for (size_t i = 0; i < m; ++i) {
            int u, v;
            in >> u >> v;
            edges.emplace_back(u, v);
        }
        return EdgeSet(std::move(edges));
    };
    inst.planted_edges = read_set(truth["planted_edges"]["file"].get<std::string>());
    inst.noise_edges = read_set(truth["noise_edges"]["file"].get<std::string>());

    std::vector<Edge> image = inst.noise_edges.edges();
    for (const auto& pair : truth["overlap_edges"])
        image.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    inst.noise_image = EdgeSet(std::move(image));

    const json& params = truth["generator_params"];
    inst.params.n = params["n"].get<int>();
    inst.params.g_model = g_model_from_string(params["g_model"].get<std::string>());
    inst.params.g_degree = params["g_degree"].get<int>();
    inst.params.h_model = h_model_from_string(params["h_model"].get<std::string>());
    inst.params.h_avg_degree = params["h_avg_degree"].get<double>();
    inst.params.h_q = params["h_q"].get<double>();
    inst.params.h_pa_m = params["h_pa_m"].get<int>();
    inst.params.seed = params["seed"].get<uint64_t>();
    return inst;
}

}  // namespace piecut
