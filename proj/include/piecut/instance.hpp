#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "piecut/graph.hpp"

namespace piecut {

enum class GModel { TwoRandomRegular, TwoGrids, TwoCliques, File };
enum class HModel { ErdosRenyi, BipartiteCrossing, PreferentialAttachment, File };

std::string to_string(GModel m);
std::string to_string(HModel m);
GModel g_model_from_string(const std::string& s);
HModel h_model_from_string(const std::string& s);

struct GeneratorSpec {
    int n = 0;  // must be even
    GModel g_model = GModel::TwoRandomRegular;
    int g_degree = 8;            // two-random-regular
    std::string g_file;          // file model
    HModel h_model = HModel::ErdosRenyi;
    double h_avg_degree = 4.0;   // erdos-renyi, E[deg] = p*(n-1)
    double h_q = 0.5;            // bipartite-crossing edge probability
    int h_pa_m = 2;              // preferential attachment out-degree
    std::string h_file;
    uint64_t seed = 1;
};

// Key=value parser for generator spec files (one pair per line, '#' comments).
GeneratorSpec parse_generator_spec(const std::string& text);
GeneratorSpec read_generator_spec_file(const std::string& path);

// A generated instance together with its hidden ground truth. The solver path
// only ever sees `f`; everything else exists for scoring and validation.
struct PlantedInstance {
    Graph f;
    std::vector<int> left;    // sorted, |left| = n/2
    std::vector<int> right;
    EdgeSet planted_edges;    // E_G
    EdgeSet noise_edges;      // pi(E_H) minus overlap with E_G
    EdgeSet noise_image;      // full pi(E_H)
    std::vector<int> pi;      // pi[x] = image of H-vertex x in V_F
    int overlap_count = 0;
    uint64_t seed = 0;
    GeneratorSpec params;

    PlantedInstance() : f(0) {}

    // Degree of a vertex of F in the noise graph, i.e. deg(pi^{-1}(v), H).
    std::vector<int> noise_degrees() const;
    bool is_left(int v) const;
};

// Uniform bijection over Pi_LR: left half maps to the left half, right half
// to the right half, each side an independent uniform permutation.
std::vector<int> sample_pi(int n, uint64_t seed);  // throws on odd n

// F = G boxplus_pi H: E_F = E_G union pi(E_H). Both graphs must be fully
// active and have the same vertex count.
Graph compose(const Graph& g, const Graph& h, const std::vector<int>& pi);

PlantedInstance generate(const GeneratorSpec& spec);

// Stand-alone generator building blocks (exposed for tests and the harness).
Graph make_two_cliques(int n);
Graph make_two_grids(int n);
Graph make_two_random_regular(int n, int degree, uint64_t seed);
Graph make_erdos_renyi(int n, double avg_degree, uint64_t seed);
Graph make_bipartite_crossing(int n, double q, uint64_t seed);
Graph make_preferential_attachment(int n, int m, uint64_t seed);

// |{u : deg(u,F) < alpha d}| <= n/alpha. The strict "<" at the boundary is a
// deliberate reading of an ambiguity in the source material; see README.
bool check_property3(const Graph& f, double alpha, double d);

struct Property4Report {
    std::vector<int> violating;             // vertices with LHS > RHS
    int checked = 0;
    double worst_margin = 0.0;              // max over u of LHS - RHS
    bool pass() const { return violating.empty(); }
};

// Per-vertex weighted-neighbor comparison over the hidden noise graph:
//   sum_{v in Nh(u), v in VH>=beta cap VG<=alpha} beta d / deg(v,H)
//     <= (8/alpha) sum_{v in Nh(u), v in VH>=beta minus VG<=alpha} beta d / deg(v,H) + 4 log2 n.
Property4Report check_property4(const PlantedInstance& inst, double alpha, double beta,
                                double d);

// Instance bundle directory: graph.edges, planted.edges, noise.edges, truth.json.
void write_instance_bundle(const PlantedInstance& inst, const std::string& dir);
PlantedInstance read_instance_bundle(const std::string& dir);

}  // namespace piecut
