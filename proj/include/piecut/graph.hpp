#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace piecut {

using VertexId = int;

// Undirected edge with canonical endpoint order (u < v).
struct Edge {
    int u, v;
    Edge() : u(-1), v(-1) {}
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
        if (a == b) throw std::invalid_argument("self-loop edge (" + std::to_string(a) + ")");
    }
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

// Deduplicated edge collection, kept sorted in canonical order.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::vector<Edge> edges);

    void insert(Edge e);
    void merge(const EdgeSet& other);
    bool contains(Edge e) const;
    size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::vector<Edge>& edges() const { return edges_; }
    auto begin() const { return edges_.begin(); }
    auto end() const { return edges_.end(); }
    bool operator==(const EdgeSet& o) const { return edges_ == o.edges_; }

private:
    std::vector<Edge> edges_;  // sorted, unique
};

// Simple undirected graph over vertex ids 0..n_total-1. Vertices keep their
// ids for the lifetime of an experiment; deletions deactivate them instead of
// renumbering, so budgets and hidden ground truth stay aligned. Instances are
// value types: the mutating operations return fresh snapshots.
class Graph {
public:
    explicit Graph(int n_total);
    static Graph from_edges(int n_total, const std::vector<Edge>& edges);

    int n_total() const { return n_total_; }
    int active_count() const { return active_count_; }
    long long edge_count() const { return m_; }
    bool is_active(int v) const { return v >= 0 && v < n_total_ && active_[v]; }
    bool has_edge(int u, int v) const;

    int degree(int v) const;  // throws on unknown/inactive vertex
    const std::vector<int>& neighbors(int v) const;
    std::vector<int> active_vertices() const;  // ascending ids
    EdgeSet edges() const;

    EdgeSet edge_boundary(const std::vector<int>& s) const;
    // Deletes the vertex set and reports the boundary edges as cut; edges
    // internal to s are removed but not reported (they were not cut).
    std::pair<Graph, EdgeSet> remove_vertices(const std::vector<int>& s) const;
    Graph remove_edges(const EdgeSet& es) const;  // throws if an edge is absent

    void check_invariants() const;  // debugging aid, O(n + m log m)

private:
    int n_total_ = 0;
    int active_count_ = 0;
    long long m_ = 0;
    std::vector<char> active_;
    std::vector<std::vector<int>> adj_;  // sorted neighbor lists

    void add_edge_internal(int u, int v);
    void require_active(int v, const char* what) const;
};

struct Cut {
    std::vector<int> side_a;
    std::vector<int> side_b;
    EdgeSet crossing_edges;
};

// Recomputes the crossing edges of (side_a, side_b) from scratch.
EdgeSet crossing_edges_of(const Graph& g, const std::vector<int>& side_a,
                          const std::vector<int>& side_b);

// Edge-list text format: first line "n m", then m lines "u v" with u < v.
std::string write_edge_list(const Graph& g);
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace piecut
