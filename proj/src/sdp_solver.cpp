#include "piecut/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include "piecut/baselines.hpp"
#include "piecut/rng.hpp"

namespace piecut {

namespace {

struct Triple {
    int a, b, c;       // constraint: d2(a,c) <= d2(a,b) + d2(b,c), b in the middle
    double lambda = 0.0;
    bool operator<(const Triple& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

class Solver {
public:
    Solver(const Graph& g, int n_total, const SdpParams& p, const Embedding* warm)
        : g_(g), n_total_(n_total), p_(p), verts_(g.active_vertices()) {
        nact_ = static_cast<int>(verts_.size());
        if (nact_ == 0) throw std::invalid_argument("solve: empty graph");
        dim_ = p_.dim > 0 ? p_.dim
                          : static_cast<int>(std::ceil(std::log2(std::max(2, n_total)))) + 4;
        if (warm && warm->dim() > dim_) dim_ = warm->dim();

        row_of_.assign(g.n_total(), -1);
        for (int i = 0; i < nact_; ++i) row_of_[verts_[i]] = i;

        // CSR adjacency over row indices
        adj_start_.assign(nact_ + 1, 0);
        for (int i = 0; i < nact_; ++i)
            adj_start_[i + 1] = adj_start_[i] + g.degree(verts_[i]);
        adj_.resize(adj_start_.back());
        for (int i = 0; i < nact_; ++i) {
            int off = adj_start_[i];
            for (int w : g.neighbors(verts_[i])) adj_[off++] = row_of_[w];
        }

        x_.assign(static_cast<size_t>(nact_) * dim_, 0.0);
        Rng rng = make_rng(derive_seed(p_.seed, 0x5d9));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < nact_; ++i) {
            bool have_warm = warm && warm->has(verts_[i]);
            double* row = &x_[static_cast<size_t>(i) * dim_];
            if (have_warm) {
                const double* src = warm->point(verts_[i]);
                std::copy(src, src + warm->dim(), row);
            } else {
                for (int d = 0; d < dim_; ++d) row[d] = gauss(rng);
            }
        }
        project_all();
        lambda_spread_.assign(nact_, 0.0);
        rng_ = make_rng(derive_seed(p_.seed, 0x71e));
    }

    SolveResult run() {
        double rho = p_.rho0;
        double lr = p_.lr;
        std::vector<double> grad(x_.size());
        std::vector<double> m(x_.size(), 0.0), v(x_.size(), 0.0);  // Adam state
        long long step_count = 0;

        best_cost_ = std::numeric_limits<double>::infinity();
        double best_infeas = std::numeric_limits<double>::infinity();
        std::vector<double> best_x = x_;
        bool have_feasible = false;

        // the warm start itself is a candidate iterate
        consider_candidate(best_cost_, best_infeas, best_x, have_feasible);

        int outer = 0;
        for (; outer < p_.max_outer; ++outer) {
            for (int it = 0; it < p_.inner_iters; ++it) {
                compute_gradient(rho, grad);
                ++step_count;
                const double b1 = 0.9, b2 = 0.999, eps_adam = 1e-9;
                double bc1 = 1.0 - std::pow(b1, static_cast<double>(step_count));
                double bc2 = 1.0 - std::pow(b2, static_cast<double>(step_count));
                for (size_t i = 0; i < x_.size(); ++i) {
                    m[i] = b1 * m[i] + (1 - b1) * grad[i];
                    v[i] = b2 * v[i] + (1 - b2) * grad[i] * grad[i];
                    x_[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps_adam);
                }
                project_all();
            }

            // multiplier updates
            std::vector<double> g_spread(nact_);
            spreading_values(g_spread);
            double max_spread = 0.0;
            for (int i = 0; i < nact_; ++i) {
                lambda_spread_[i] = std::max(0.0, lambda_spread_[i] + rho * g_spread[i]);
                max_spread = std::max(max_spread, g_spread[i]);
            }
            double max_tri = refresh_triangles(rho);

            consider_candidate(best_cost_, best_infeas, best_x, have_feasible);

            bool feasible_now = max_spread <= p_.eps * n_total_ * 0.5 && max_tri <= p_.eps * 0.5;
            if (feasible_now && have_feasible && outer >= 3) {
                double cur = objective();
                if (cur >= best_cost_ * (1.0 - 1e-4) && outer >= 5) break;
            }
            if (!feasible_now) rho = std::min(rho * 1.8, 1e7);
            lr = std::max(p_.lr_min, lr * p_.lr_decay);
        }

        x_ = best_x;
        SolveResult res;
        res.embedding = to_embedding();
        res.report = check_feasibility(res.embedding, g_, n_total_,
                                       derive_seed(p_.seed, 0xfea5));
        res.converged = res.report.within(p_.eps, n_total_);
        res.cost = sdp_cost(res.embedding, g_);
        res.outer_rounds = outer;
        return res;
    }

private:
    const Graph& g_;
    int n_total_;
    SdpParams p_;
    std::vector<int> verts_;
    int nact_ = 0, dim_ = 0;
    std::vector<int> row_of_, adj_, adj_start_;
    std::vector<double> x_;
    std::vector<double> lambda_spread_;
    std::vector<Triple> triangles_;
    Rng rng_;
    double best_cost_ = 0.0;

    double* row(int i) { return &x_[static_cast<size_t>(i) * dim_]; }
    const double* row(int i) const { return &x_[static_cast<size_t>(i) * dim_]; }

    void project_all() {
        const double target = std::sqrt(0.5);
        for (int i = 0; i < nact_; ++i) {
            double* r = row(i);
            double n2 = 0.0;
            for (int d = 0; d < dim_; ++d) n2 += r[d] * r[d];
            double nrm = std::sqrt(n2);
            if (nrm < 1e-12) {
                r[0] = target;  // degenerate row, park it on an axis
                for (int d = 1; d < dim_; ++d) r[d] = 0.0;
            } else {
                double f = target / nrm;
                for (int d = 0; d < dim_; ++d) r[d] *= f;
            }
        }
    }

    double dist2_rows(int i, int j) const {
        const double* a = row(i);
        const double* b = row(j);
        double s = 0.0;
        for (int d = 0; d < dim_; ++d) {
            double t = a[d] - b[d];
            s += t * t;
        }
        return s;
    }

    double objective() const {
        double cost = 0.0;
        for (int i = 0; i < nact_; ++i)
            for (int e = adj_start_[i]; e < adj_start_[i + 1]; ++e)
                if (adj_[e] > i) cost += dist2_rows(i, adj_[e]);
        return cost;
    }

    // g_u = sum_v (1 - d2(u,v)) - n/2 = 2 <x_u, mu> - n/2 on the sphere
    void spreading_values(std::vector<double>& out) const {
        std::vector<double> mu(dim_, 0.0);
        for (int i = 0; i < nact_; ++i) {
            const double* r = row(i);
            for (int d = 0; d < dim_; ++d) mu[d] += r[d];
        }
        for (int i = 0; i < nact_; ++i) {
            const double* r = row(i);
            double dot = 0.0;
            for (int d = 0; d < dim_; ++d) dot += r[d] * mu[d];
            out[i] = 2.0 * dot - static_cast<double>(n_total_) / 2.0;
        }
    }

    void compute_gradient(double rho, std::vector<double>& grad) {
        std::fill(grad.begin(), grad.end(), 0.0);
        // objective: d/dx_u sum_(u,v) ||x_u - x_v||^2 = 2 sum_v (x_u - x_v)
        for (int i = 0; i < nact_; ++i) {
            double* gi = &grad[static_cast<size_t>(i) * dim_];
            const double* ri = row(i);
            for (int e = adj_start_[i]; e < adj_start_[i + 1]; ++e) {
                const double* rj = row(adj_[e]);
                for (int d = 0; d < dim_; ++d) gi[d] += 2.0 * (ri[d] - rj[d]);
            }
        }

        // spreading AL term: psi'(g_u) = max(0, lambda_u + rho g_u)
        std::vector<double> mu(dim_, 0.0);
        for (int i = 0; i < nact_; ++i) {
            const double* r = row(i);
            for (int d = 0; d < dim_; ++d) mu[d] += r[d];
        }
        std::vector<double> a(nact_);
        std::vector<double> asum(dim_, 0.0);
        for (int i = 0; i < nact_; ++i) {
            const double* r = row(i);
            double dot = 0.0;
            for (int d = 0; d < dim_; ++d) dot += r[d] * mu[d];
            double g_u = 2.0 * dot - static_cast<double>(n_total_) / 2.0;
            a[i] = std::max(0.0, lambda_spread_[i] + rho * g_u);
            for (int d = 0; d < dim_; ++d) asum[d] += a[i] * r[d];
        }
        for (int i = 0; i < nact_; ++i) {
            double* gi = &grad[static_cast<size_t>(i) * dim_];
            for (int d = 0; d < dim_; ++d)
                gi[d] += 2.0 * a[i] * mu[d] + 2.0 * asum[d];
        }

        // active triangle constraints
        for (auto& t : triangles_) {
            double viol = dist2_rows(t.a, t.c) - dist2_rows(t.a, t.b) - dist2_rows(t.b, t.c);
            double w = std::max(0.0, t.lambda + rho * viol);
            if (w <= 0.0) continue;
            const double* xa = row(t.a);
            const double* xb = row(t.b);
            const double* xc = row(t.c);
            double* ga = &grad[static_cast<size_t>(t.a) * dim_];
            double* gb = &grad[static_cast<size_t>(t.b) * dim_];
            double* gc = &grad[static_cast<size_t>(t.c) * dim_];
            // viol = -1 - 2<a,c> + 2<a,b> + 2<b,c> on the sphere
            for (int d = 0; d < dim_; ++d) {
                ga[d] += w * 2.0 * (xb[d] - xc[d]);
                gb[d] += w * 2.0 * (xa[d] + xc[d]);
                gc[d] += w * 2.0 * (xb[d] - xa[d]);
            }
        }
    }

    // Samples fresh triples, retains/updates the most violated, returns the
    // worst violation seen this round.
    double refresh_triangles(double rho) {
        double worst = 0.0;
        for (auto& t : triangles_) {
            double viol = dist2_rows(t.a, t.c) - dist2_rows(t.a, t.b) - dist2_rows(t.b, t.c);
            t.lambda = std::max(0.0, t.lambda + rho * viol);
            worst = std::max(worst, viol);
        }
        if (nact_ < 3) return worst;
        std::map<Triple, double> fresh;
        for (int s = 0; s < p_.triangle_samples; ++s) {
            int i = uniform_int(rng_, 0, nact_ - 1);
            int j = uniform_int(rng_, 0, nact_ - 1);
            int l = uniform_int(rng_, 0, nact_ - 1);
            if (i == j || j == l || i == l) continue;
            double dij = dist2_rows(i, j), djl = dist2_rows(j, l), dil = dist2_rows(i, l);
            // orient so the largest side is the one being bounded
            Triple t;
            double viol;
            if (dil >= dij && dil >= djl) { t = {i, j, l}; viol = dil - dij - djl; }
            else if (dij >= djl) { t = {i, l, j}; viol = dij - dil - djl; }
            else { t = {j, i, l}; viol = djl - dij - dil; }
            worst = std::max(worst, viol);
            if (viol > p_.eps * 0.25) {
                auto it = fresh.find(t);
                if (it == fresh.end() || it->second < viol) fresh[t] = viol;
            }
        }
        const size_t sorted_end = triangles_.size();
        for (const auto& [t, viol] : fresh) {
            (void)viol;
            if (static_cast<int>(triangles_.size()) >= p_.max_active_triangles) break;
            if (!std::binary_search(triangles_.begin(), triangles_.begin() + sorted_end, t))
                triangles_.push_back(t);
        }
        std::sort(triangles_.begin(), triangles_.end());
        // prune satisfied constraints with no multiplier pressure
        triangles_.erase(
            std::remove_if(triangles_.begin(), triangles_.end(),
                           [&](const Triple& t) {
                               if (t.lambda > 0.0) return false;
                               double viol = dist2_rows(t.a, t.c) - dist2_rows(t.a, t.b) -
                                             dist2_rows(t.b, t.c);
                               return viol < -0.05;
                           }),
            triangles_.end());
        return worst;
    }

    // quick feasibility estimate + cost; keeps the best eps-feasible iterate
    void consider_candidate(double& best_cost, double& best_infeas,
                            std::vector<double>& best_x, bool& have_feasible) {
        std::vector<double> g_spread(nact_);
        spreading_values(g_spread);
        double max_spread = 0.0;
        for (double v : g_spread) max_spread = std::max(max_spread, v);
        double max_tri = 0.0;
        if (nact_ >= 3) {
            Rng rng = make_rng(derive_seed(p_.seed, 0xabc));
            int samples = std::min(60000, 10 * nact_ * nact_);
            for (int s = 0; s < samples; ++s) {
                int i = uniform_int(rng, 0, nact_ - 1);
                int j = uniform_int(rng, 0, nact_ - 1);
                int l = uniform_int(rng, 0, nact_ - 1);
                if (i == j || j == l || i == l) continue;
                double viol = dist2_rows(i, l) - dist2_rows(i, j) - dist2_rows(j, l);
                max_tri = std::max(max_tri, viol);
            }
        }
        bool feasible = max_spread <= p_.eps * n_total_ && max_tri <= p_.eps;
        double infeas = std::max(max_spread / std::max(1, n_total_), max_tri);
        double cost = objective();
        if (feasible) {
            if (!have_feasible || cost < best_cost) {
                best_cost = cost;
                best_x = x_;
                have_feasible = true;
            }
        } else if (!have_feasible && infeas < best_infeas) {
            best_infeas = infeas;
            best_x = x_;
            best_cost = cost;
        }
    }

    Embedding to_embedding() const {
        Embedding emb(dim_, p_.eps);
        emb.reserve(g_.n_total());
        std::vector<double> p(dim_);
        for (int i = 0; i < nact_; ++i) {
            const double* r = row(i);
            std::copy(r, r + dim_, p.begin());
            emb.set_point(verts_[i], p);
        }
        return emb;
    }
};

}  // namespace

namespace {

// Hard two-point init from a Fiedler-style median split.
Embedding spectral_init(const Graph& g, double eps) {
    std::vector<double> fied = fiedler_vector(g);
    std::vector<int> verts = g.active_vertices();
    std::vector<int> order(verts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fied[a] < fied[b]; });
    std::vector<int> left, right;
    for (size_t i = 0; i < order.size(); ++i)
        (i < order.size() / 2 ? left : right).push_back(verts[order[i]]);
    return intended_embedding(left, right, eps);
}

bool better_result(const SolveResult& a, const SolveResult& b) {
    // a better than b?
    if (a.converged != b.converged) return a.converged;
    if (a.converged) return a.cost < b.cost;
    double va = std::max(a.report.max_spreading_violation, a.report.max_triangle_violation);
    double vb = std::max(b.report.max_spreading_violation, b.report.max_triangle_violation);
    return va < vb;
}

}  // namespace

SolveResult solve(const Graph& g, int n_total, const SdpParams& params,
                  const Embedding* warm) {
    std::vector<Embedding> inits;
    if (warm) inits.push_back(*warm);
    if (!warm && g.active_count() >= 2) {
        try {
            inits.push_back(spectral_init(g, params.eps));
        } catch (const std::exception&) {
            // fall through to random inits
        }
    }

    std::optional<SolveResult> best;
    const int attempts = 1;  // gaussian attempts beyond the seeded inits
    for (size_t i = 0; i < inits.size() + attempts; ++i) {
        SdpParams p = params;
        p.seed = derive_seed(params.seed, 0x50F + i);
        const Embedding* init = i < inits.size() ? &inits[i] : nullptr;
        Solver solver(g, n_total, p, init);
        SolveResult res = solver.run();
        if (!best || better_result(res, *best)) best = std::move(res);
        if (best->converged && i + 1 >= inits.size() && best->cost <= params.eps) break;
    }
    return std::move(*best);
}

}  // namespace piecut
