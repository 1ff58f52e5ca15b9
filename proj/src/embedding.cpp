#include "piecut/embedding.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "piecut/rng.hpp"

namespace piecut {

Embedding::Embedding(int dim, double tolerance) : dim_(dim), tolerance_(tolerance) {
    if (dim < 1) throw std::invalid_argument("embedding dimension must be positive");
}

void Embedding::set_point(int v, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != dim_)
        throw std::invalid_argument("point dimension mismatch");
    if (v < 0) throw std::invalid_argument("negative vertex id");
    if (v >= static_cast<int>(row_of_.size())) row_of_.resize(v + 1, -1);
    if (row_of_[v] < 0) {
        row_of_[v] = static_cast<int>(rows_.size());
        rows_.push_back(v);
        pts_.insert(pts_.end(), p.begin(), p.end());
    } else {
        std::copy(p.begin(), p.end(), pts_.begin() + static_cast<size_t>(row_of_[v]) * dim_);
    }
}

const double* Embedding::point(int v) const {
    if (!has(v)) throw std::invalid_argument("no point for vertex " + std::to_string(v));
    return pts_.data() + static_cast<size_t>(row_of_[v]) * dim_;
}

double* Embedding::mutable_point(int v) {
    if (!has(v)) throw std::invalid_argument("no point for vertex " + std::to_string(v));
    return pts_.data() + static_cast<size_t>(row_of_[v]) * dim_;
}

double Embedding::dist2(int u, int v) const {
    const double* a = point(u);
    const double* b = point(v);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double Embedding::norm2(int v) const {
    const double* a = point(v);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += a[i] * a[i];
    return s;
}

Embedding Embedding::restricted_to(const std::vector<int>& keep) const {
    Embedding out(dim_, tolerance_);
    std::vector<double> p(dim_);
    for (int v : keep) {
        if (!has(v)) continue;
        const double* src = point(v);
        std::copy(src, src + dim_, p.begin());
        out.set_point(v, p);
    }
    return out;
}

Embedding Embedding::extended_orthogonally(const std::vector<int>& removed) const {
    for (int v : removed)
        if (has(v))
            throw std::invalid_argument("extend_orthogonally: vertex already embedded");
    if (removed.empty()) return *this;
    int extra = static_cast<int>(removed.size());
    Embedding out(dim_ + extra, tolerance_);
    std::vector<double> p(dim_ + extra, 0.0);
    for (int v : rows_) {
        const double* src = point(v);
        std::fill(p.begin(), p.end(), 0.0);
        std::copy(src, src + dim_, p.begin());
        out.set_point(v, p);
    }
    const double r = std::sqrt(0.5);
    for (int i = 0; i < extra; ++i) {
        std::fill(p.begin(), p.end(), 0.0);
        p[dim_ + i] = r;
        out.set_point(removed[i], p);
    }
    return out;
}

std::string Embedding::dump() const {
    std::ostringstream os;
    std::vector<int> ids = rows_;
    std::sort(ids.begin(), ids.end());
    for (int v : ids) {
        os << v;
        const double* p = point(v);
        for (int i = 0; i < dim_; ++i) os << ' ' << p[i];
        os << '\n';
    }
    return os.str();
}

double sdp_cost(const Embedding& emb, const Graph& g) {
    double cost = 0.0;
    for (int u : g.active_vertices()) {
        if (!emb.has(u)) throw std::invalid_argument("sdp_cost: vertex without a point");
        for (int v : g.neighbors(u))
            if (u < v) cost += emb.dist2(u, v);
    }
    return cost;
}

double edge_length(const Embedding& emb, int u, int v) { return emb.dist2(u, v); }

EdgeClass classify(const Embedding& emb, int u, int v, double threshold) {
    return emb.dist2(u, v) <= threshold ? EdgeClass::Short : EdgeClass::Long;
}

Embedding extend_orthogonally(const Embedding& emb, const std::vector<int>& removed) {
    return emb.extended_orthogonally(removed);
}

ViolationReport check_feasibility(const Embedding& emb, const Graph& g, int n_total,
                                  uint64_t seed) {
    ViolationReport rep;
    std::vector<int> verts = g.active_vertices();
    const int k = static_cast<int>(verts.size());
    if (k == 0) return rep;
    for (int v : verts)
        if (!emb.has(v)) throw std::invalid_argument("check_feasibility: missing point");

    for (int v : verts) {
        double nv = std::fabs(emb.norm2(v) - 0.5);
        if (nv > rep.max_norm_violation) {
            rep.max_norm_violation = nv;
            rep.worst_norm_vertex = v;
        }
    }

    // spreading via sums: sum_v d2(u,v) = k*|u|^2 + S2 - 2<u, mu>
    const int dim = emb.dim();
    std::vector<double> mu(dim, 0.0);
    double sum_norm2 = 0.0;
    for (int v : verts) {
        const double* p = emb.point(v);
        for (int i = 0; i < dim; ++i) mu[i] += p[i];
        sum_norm2 += emb.norm2(v);
    }
    for (int u : verts) {
        const double* p = emb.point(u);
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += p[i] * mu[i];
        double sum_d2 = k * emb.norm2(u) + sum_norm2 - 2.0 * dot;
        double lhs = static_cast<double>(k) - sum_d2;  // sum_v (1 - d2(u,v))
        double viol = lhs - static_cast<double>(n_total) / 2.0;
        if (viol > rep.max_spreading_violation) {
            rep.max_spreading_violation = viol;
            rep.worst_spread_vertex = u;
        }
    }

    auto tri_violation = [&](int a, int b, int c) {
        double ab = emb.dist2(a, b), bc = emb.dist2(b, c), ac = emb.dist2(a, c);
        double worst = ac - ab - bc;            // b as midpoint
        worst = std::max(worst, ab - ac - bc);  // c as midpoint
        worst = std::max(worst, bc - ab - ac);  // a as midpoint
        return worst;
    };

    if (k <= 300) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                for (int l = j + 1; l < k; ++l) {
                    rep.max_triangle_violation =
                        std::max(rep.max_triangle_violation, tri_violation(verts[i], verts[j], verts[l]));
                    ++rep.triples_checked;
                }
    } else {
        rep.sampled = true;
        Rng rng = make_rng(seed);
        const long long samples = 1'000'000;
        for (long long s = 0; s < samples; ++s) {
            int i = uniform_int(rng, 0, k - 1);
            int j = uniform_int(rng, 0, k - 1);
            int l = uniform_int(rng, 0, k - 1);
            if (i == j || j == l || i == l) continue;
            rep.max_triangle_violation =
                std::max(rep.max_triangle_violation, tri_violation(verts[i], verts[j], verts[l]));
            ++rep.triples_checked;
        }
    }
    return rep;
}

Embedding intended_embedding(const std::vector<int>& left, const std::vector<int>& right,
                             double tolerance) {
    Embedding emb(2, tolerance);
    const double r = std::sqrt(0.5);
    std::vector<double> p1 = {r, 0.0}, p2 = {0.0, r};
    for (int v : left) emb.set_point(v, p1);
    for (int v : right) emb.set_point(v, p2);
    return emb;
}

}  // namespace piecut
