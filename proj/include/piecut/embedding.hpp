#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "piecut/graph.hpp"

namespace piecut {

// Vector solution of the Balanced Cut relaxation: one point per active vertex
// on (within tolerance) the sphere of squared radius 1/2, measured throughout
// in squared Euclidean distance.
class Embedding {
public:
    Embedding() = default;
    Embedding(int dim, double tolerance);

    int dim() const { return dim_; }
    double tolerance() const { return tolerance_; }
    size_t size() const { return rows_.size(); }
    bool has(int v) const {
        return v >= 0 && v < static_cast<int>(row_of_.size()) && row_of_[v] >= 0;
    }
    const std::vector<int>& vertices() const { return rows_; }

    void set_point(int v, const std::vector<double>& p);
    const double* point(int v) const;          // throws if missing
    double dist2(int u, int v) const;          // squared Euclidean distance
    double norm2(int v) const;

    // Keeps only the listed vertices (used when warm-starting on a subgraph).
    Embedding restricted_to(const std::vector<int>& keep) const;

    // Gives each vertex in `removed` a fresh coordinate direction of length
    // sqrt(1/2); distances to all prior points (and between the new points)
    // are exactly 1. Extends the dimension as needed.
    Embedding extended_orthogonally(const std::vector<int>& removed) const;

    std::string dump() const;  // one line per vertex: "id x1 ... xk"

    double* mutable_point(int v);
    void reserve(int n_hint) { if (static_cast<int>(row_of_.size()) < n_hint) row_of_.resize(n_hint, -1); }

private:
    int dim_ = 0;
    double tolerance_ = 1e-3;
    std::vector<int> row_of_;      // vertex id -> row, -1 when absent
    std::vector<int> rows_;        // row -> vertex id
    std::vector<double> pts_;      // row-major
};

double sdp_cost(const Embedding& emb, const Graph& g);
double edge_length(const Embedding& emb, int u, int v);

enum class EdgeClass { Short, Long };
// Short iff length <= threshold (inclusive boundary).
EdgeClass classify(const Embedding& emb, int u, int v, double threshold);

Embedding extend_orthogonally(const Embedding& emb, const std::vector<int>& removed);

struct ViolationReport {
    double max_norm_violation = 0.0;       // max |  ||x||^2 - 1/2  |
    double max_spreading_violation = 0.0;  // max_u sum_v (1 - d2(u,v)) - n/2, floored at 0
    double max_triangle_violation = 0.0;   // max d2(u,w) - d2(u,v) - d2(v,w), floored at 0
    long long triples_checked = 0;
    bool sampled = false;
    int worst_norm_vertex = -1;
    int worst_spread_vertex = -1;

    // eps bounds norm and triangle violations absolutely and spreading
    // violations relative to n (slack eps*n), matching the relaxation's
    // tolerance contract.
    bool within(double eps, int n_total) const {
        return max_norm_violation <= eps && max_triangle_violation <= eps &&
               max_spreading_violation <= eps * n_total;
    }
};

// Exhaustive triangle scan when the active set is small (<= 300 vertices),
// a seeded one-million-triple sample otherwise.
ViolationReport check_feasibility(const Embedding& emb, const Graph& g, int n_total,
                                  uint64_t seed = 0x7ea5u);

// The two-point witness: left vertices at e1/sqrt(2), right at e2/sqrt(2).
Embedding intended_embedding(const std::vector<int>& left, const std::vector<int>& right,
                             double tolerance = 1e-3);

}  // namespace piecut
