#include "piecut/graph.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace piecut {

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

void EdgeSet::insert(Edge e) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || !(*it == e)) edges_.insert(it, e);
}

void EdgeSet::merge(const EdgeSet& other) {
    if (other.empty()) return;
    std::vector<Edge> merged;
    merged.reserve(edges_.size() + other.edges_.size());
    std::merge(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    edges_ = std::move(merged);
}

bool EdgeSet::contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

Graph::Graph(int n_total)
    : n_total_(n_total), active_count_(n_total), active_(n_total, 1), adj_(n_total) {
    if (n_total < 0) throw std::invalid_argument("negative vertex count");
}

Graph Graph::from_edges(int n_total, const std::vector<Edge>& edges) {
    Graph g(n_total);
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const Edge& e : sorted) {
        if (e.u < 0 || e.v >= n_total)
            throw std::invalid_argument("edge endpoint out of range");
        g.add_edge_internal(e.u, e.v);
    }
    return g;
}

void Graph::add_edge_internal(int u, int v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    // from_edges feeds edges in canonical sorted order, but neighbor lists of
    // the higher endpoint may still receive ids out of order
    auto fix = [](std::vector<int>& a) {
        if (a.size() >= 2 && a[a.size() - 2] > a.back()) {
            int x = a.back();
            a.pop_back();
            a.insert(std::upper_bound(a.begin(), a.end(), x), x);
        }
    };
    fix(adj_[u]);
    fix(adj_[v]);
    ++m_;
}

void Graph::require_active(int v, const char* what) const {
    if (v < 0 || v >= n_total_ || !active_[v])
        throw std::invalid_argument(std::string(what) + ": unknown or inactive vertex " +
                                    std::to_string(v));
}

bool Graph::has_edge(int u, int v) const {
    if (!is_active(u) || !is_active(v) || u == v) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int t = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
}

int Graph::degree(int v) const {
    require_active(v, "degree");
    return static_cast<int>(adj_[v].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
    require_active(v, "neighbors");
    return adj_[v];
}

std::vector<int> Graph::active_vertices() const {
    std::vector<int> out;
    out.reserve(active_count_);
    for (int v = 0; v < n_total_; ++v)
        if (active_[v]) out.push_back(v);
    return out;
}

EdgeSet Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (int u = 0; u < n_total_; ++u) {
        if (!active_[u]) continue;
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    }
    return EdgeSet(std::move(out));
}

EdgeSet Graph::edge_boundary(const std::vector<int>& s) const {
    std::vector<char> in_s(n_total_, 0);
    for (int v : s) {
        require_active(v, "edge_boundary");
        in_s[v] = 1;
    }
    std::vector<Edge> out;
    for (int v : s) {
        for (int w : adj_[v])
            if (!in_s[w]) out.emplace_back(v, w);
    }
    return EdgeSet(std::move(out));
}

std::pair<Graph, EdgeSet> Graph::remove_vertices(const std::vector<int>& s) const {
    EdgeSet boundary = edge_boundary(s);
    Graph g = *this;
    std::vector<char> in_s(n_total_, 0);
    for (int v : s) in_s[v] = 1;
    for (int v = 0; v < n_total_; ++v) {
        if (in_s[v]) continue;
        auto& nb = g.adj_[v];
        size_t before = nb.size();
        nb.erase(std::remove_if(nb.begin(), nb.end(), [&](int w) { return in_s[w]; }),
                 nb.end());
        g.m_ -= static_cast<long long>(before - nb.size());
    }
    for (int v : s) {
        // edges internal to s counted once each
        long long internal = 0;
        for (int w : g.adj_[v])
            if (in_s[w] && w > v) ++internal;
        g.m_ -= internal;
        g.adj_[v].clear();
        if (g.active_[v]) {
            g.active_[v] = 0;
            --g.active_count_;
        }
    }
    return {std::move(g), std::move(boundary)};
}

Graph Graph::remove_edges(const EdgeSet& es) const {
    Graph g = *this;
    for (const Edge& e : es) {
        if (!g.has_edge(e.u, e.v))
            throw std::invalid_argument("remove_edges: edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") not present");
        auto erase_one = [](std::vector<int>& a, int x) {
            auto it = std::lower_bound(a.begin(), a.end(), x);
            a.erase(it);
        };
        erase_one(g.adj_[e.u], e.v);
        erase_one(g.adj_[e.v], e.u);
        --g.m_;
    }
    return g;
}

void Graph::check_invariants() const {
    long long degsum = 0;
    for (int v = 0; v < n_total_; ++v) {
        if (!active_[v]) {
            if (!adj_[v].empty()) throw std::logic_error("inactive vertex with edges");
            continue;
        }
        degsum += static_cast<long long>(adj_[v].size());
        int prev = -1;
        for (int w : adj_[v]) {
            if (w == v) throw std::logic_error("self loop");
            if (w <= prev) throw std::logic_error("neighbor list not sorted/unique");
            if (!active_[w]) throw std::logic_error("edge to inactive vertex");
            if (!std::binary_search(adj_[w].begin(), adj_[w].end(), v))
                throw std::logic_error("asymmetric adjacency");
            prev = w;
        }
    }
    if (degsum != 2 * m_) throw std::logic_error("edge_count mismatch");
}

EdgeSet crossing_edges_of(const Graph& g, const std::vector<int>& side_a,
                          const std::vector<int>& side_b) {
    std::vector<char> in_a(g.n_total(), 0);
    for (int v : side_a) in_a[v] = 1;
    std::vector<Edge> out;
    for (int v : side_b) {
        if (!g.is_active(v)) continue;
        for (int w : g.neighbors(v))
            if (in_a[w]) out.emplace_back(v, w);
    }
    return EdgeSet(std::move(out));
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.n_total() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
    return os.str();
}

Graph read_edge_list(std::istream& in) {
    int n;
    long long m;
    if (!(in >> n >> m)) throw std::runtime_error("edge list: bad header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw std::runtime_error("edge list: truncated");
        if (u >= v || u < 0 || v >= n) throw std::runtime_error("edge list: bad edge");
        edges.emplace_back(u, v);
    }
    Graph g = Graph::from_edges(n, edges);
    if (g.edge_count() != m) throw std::runtime_error("edge list: duplicate edges");
    return g;
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << write_edge_list(g);
}

}  // namespace piecut
