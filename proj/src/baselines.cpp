#include "piecut/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "piecut/rng.hpp"

namespace piecut {

// Power iteration on sigma*I - L with deflation of the all-ones vector. For a
// disconnected graph the iterate settles inside the 0-eigenspace of L, which
// still yields a component-aligned split.
std::vector<double> fiedler_vector(const Graph& f) {
    std::vector<int> verts = f.active_vertices();
    const int k = static_cast<int>(verts.size());
    if (k < 2) throw std::invalid_argument("baseline_spectral: too few vertices");
    std::vector<int> row_of(f.n_total(), -1);
    for (int i = 0; i < k; ++i) row_of[verts[i]] = i;

    double max_deg = 0;
    for (int v : verts) max_deg = std::max(max_deg, static_cast<double>(f.degree(v)));
    const double sigma = 2.0 * max_deg + 1.0;

    Rng rng = make_rng(0x5eedbea7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(k), y(k);
    for (double& xi : x) xi = gauss(rng);

    auto deflate = [&](std::vector<double>& v) {
        double mean = std::accumulate(v.begin(), v.end(), 0.0) / k;
        for (double& vi : v) vi -= mean;
    };
    auto normalize = [&](std::vector<double>& v) {
        double n2 = 0;
        for (double vi : v) n2 += vi * vi;
        double nrm = std::sqrt(n2);
        if (nrm < 1e-14) throw std::runtime_error("baseline_spectral: eigensolver collapsed");
        for (double& vi : v) vi /= nrm;
    };

    deflate(x);
    normalize(x);
    double prev_rayleigh = -1e300;
    for (int iter = 0; iter < 20000; ++iter) {
        for (int i = 0; i < k; ++i) {
            double acc = (sigma - f.degree(verts[i])) * x[i];
            for (int w : f.neighbors(verts[i])) acc += x[row_of[w]];
            y[i] = acc;
        }
        deflate(y);
        double rayleigh = 0;
        for (int i = 0; i < k; ++i) rayleigh += x[i] * y[i];
        std::swap(x, y);
        normalize(x);
        if (iter > 10 && std::fabs(rayleigh - prev_rayleigh) < 1e-12 * std::fabs(sigma))
            return x;
        prev_rayleigh = rayleigh;
    }
    throw std::runtime_error("baseline_spectral: eigensolver did not converge");
}

namespace {

Cut cut_from_sides(const Graph& f, std::vector<int> a, std::vector<int> b) {
    Cut cut;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    cut.side_a = std::move(a);
    cut.side_b = std::move(b);
    cut.crossing_edges = crossing_edges_of(f, cut.side_a, cut.side_b);
    return cut;
}

}  // namespace

Cut baseline_spectral(const Graph& f) {
    std::vector<int> verts = f.active_vertices();
    std::vector<double> fied = fiedler_vector(f);
    std::vector<int> order(verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (fied[i] != fied[j]) return fied[i] < fied[j];
        return verts[i] < verts[j];
    });
    size_t half = verts.size() / 2;
    std::vector<int> a, b;
    for (size_t i = 0; i < order.size(); ++i)
        (i < half ? a : b).push_back(verts[order[i]]);
    return cut_from_sides(f, std::move(a), std::move(b));
}

Cut baseline_random(const Graph& f, uint64_t seed) {
    std::vector<int> verts = f.active_vertices();
    Rng rng = make_rng(derive_seed(seed, 0xBA5E));
    for (int i = static_cast<int>(verts.size()) - 1; i > 0; --i)
        std::swap(verts[i], verts[uniform_int(rng, 0, i)]);
    size_t half = verts.size() / 2;
    std::vector<int> a(verts.begin(), verts.begin() + half);
    std::vector<int> b(verts.begin() + half, verts.end());
    return cut_from_sides(f, std::move(a), std::move(b));
}

double expected_random_bisection_cost(const Graph& f) {
    const double n = f.active_count();
    if (n < 2) return 0.0;
    const double h1 = std::floor(n / 2), h2 = n - h1;
    return static_cast<double>(f.edge_count()) * 2.0 * h1 * h2 / (n * (n - 1));
}

}  // namespace piecut
