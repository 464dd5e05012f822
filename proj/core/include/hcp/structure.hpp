#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcp/model.hpp"

namespace hcp {

// Threshold constants of the structural events. Defaults are the asymptotic
// values; experiments may scale them.
struct Constants {
    double small_div = 20;        // B(p,S): d_S(v) <= c|S| log n / (small_div n)
    double b1_exp_div = 4;        // |B(p,S)| <= n^(1 - c|S|/(b1_exp_div n))
    double b3_factor = 10;        // <= b3_factor r n / (c|S|) small vertices ...
    int b3_radius = 10;           // ... within this radius
    double am_div = 25;           // A_m: d_i(v) <= mu_i alpha_i log n / am_div
    double b_factor_t1 = 50;      // B: d(v) <= b_factor_t1 r / (beta alpha_min)
    double b_factor_t2 = 400;     // B: d_r(v) <= b_factor_t2 r / (beta alpha_min)
    double am_count_factor = 1;   // |A_m| <= am_count_factor r n^(1 - alpha_min mu_min)
    double am_local_factor = 10;  // <= am_local_factor r / (alpha_min mu_min) ...
    int am_local_radius = 10;     // ... A_m vertices within this radius
    double astar_div = 20;        // A*: d_ij(v) <= gamma c alpha_i log n / astar_div
    double exp_a_size_div = 200;  // expansion (a): |S| <= alpha mu n / (exp_a_size_div log n)
    double exp_a_div = 100;       //   |N(S)| >= |S| mu alpha log n / exp_a_div
    double exp_b_size_div = 1e5;  // expansion (b): |S| <= mu^2 alpha^2 n / exp_b_size_div
    double exp_b_factor = 3;      //   |N(S)| >= exp_b_factor |S|

    static const Constants& paper();
    nlohmann::json to_json() const;
};

struct CheckReport {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    bool pass = true;
    bool vacuous = false;  // no set satisfied the size precondition
    std::optional<nlohmann::json> witness;

    nlohmann::json to_json() const;
};

enum class SchemeKind { theorem1, theorem2 };

// Ordered disjoint blocks covering [n]. For theorem2, block 0 is V_0, blocks
// 1..sigma carry the small colors, the rest the large ones.
struct PartitionScheme {
    SchemeKind kind = SchemeKind::theorem1;
    int n = 0;
    int sigma = 0;
    std::vector<std::vector<Vertex>> blocks;
    std::vector<std::string> roles;
    std::vector<Color> color;  // color served by each block (0 for V_0)

    double mu(std::size_t b) const { return n ? static_cast<double>(blocks[b].size()) / n : 0.0; }
    double mu_min() const;
    // Block index per vertex, -1 when uncovered.
    std::vector<int> block_of() const;
    // Throws InputError when blocks overlap or miss a vertex.
    void validate() const;
    int block_for_color(Color c) const;
};

// Estimated density constant c with p = c log n / n.
double density_constant(const ColoredGraph& g);

struct SmallSetResult {
    std::vector<Vertex> members;
    double threshold = 0;  // degree threshold
    double bound = 0;      // B1 bound on |B(p,S)|
    bool within_bound = true;
};

SmallSetResult small_set(const ColoredGraph& g, const std::vector<Vertex>& S, double c,
                         const Constants& k = Constants::paper());

CheckReport check_small_pairs(const ColoredGraph& g, double c, const Constants& k = Constants::paper());

// `bound` overrides b3_factor r n / (c|S|) when set.
CheckReport check_local_small_density(const ColoredGraph& g, const std::vector<Vertex>& S, double c,
                                      int r, std::optional<double> bound = std::nullopt,
                                      const Constants& k = Constants::paper());

int min_degree(const ColoredGraph& g);
CheckReport check_min_degree(const ColoredGraph& g, int r);

// Refutation search for disjoint S1, S2 with |S1|,|S2| >= s1 and no edge between.
CheckReport check_disjoint_sets_edge(const ColoredGraph& g, int s1, std::uint64_t seed = 0);
double b5_set_size(int n);

enum class DangerVariant { theorem1, theorem2 };

struct DangerReport {
    std::vector<Vertex> A_m;
    std::vector<Vertex> B;
    // d_i(v): color-i degree into the block of color i; row per vertex.
    std::vector<std::vector<int>> color_degree;
    std::vector<int> degree;  // d(v), or d_r(v) for theorem2
    std::vector<double> am_threshold;  // per color
    double b_threshold = 0;
    CheckReport lemma_a, lemma_b, lemma_c;

    std::vector<std::string> violations() const;
};

DangerReport compute_danger_sets(const ColoredGraph& g, const PartitionScheme& scheme,
                                 const ProfileVector& m, const ColorWeights& alpha, double beta,
                                 DangerVariant variant, const Constants& k = Constants::paper());

struct AStarResult {
    std::vector<Vertex> members;
    double gamma = 0;
    double c = 0;
    int g = 0;  // number of intervals
    int width = 0;
};

AStarResult compute_A_star(const ColoredGraph& g, double gamma, double c, const ColorWeights& alpha,
                           const Constants& k = Constants::paper());

CheckReport check_containment(const std::vector<Vertex>& A_m, const AStarResult& a_star);

CheckReport check_density(const ColoredGraph& g, double rho, double c);

struct ExpansionReport {
    CheckReport a, b, c;
};

ExpansionReport check_expansion(const ColoredGraph& g, const std::vector<Vertex>& block, Color color,
                                const std::vector<Vertex>& A_m, double mu_min, double alpha_min,
                                std::uint64_t seed = 0, const Constants& k = Constants::paper());

// Connectivity of the color class on a block plus the disjoint-sets edge
// property with sets of size n(log log n)^2 / log n.
struct ChainBlockReport {
    CheckReport connected, cross_edge;
};
ChainBlockReport check_chain_block(const ColoredGraph& g, const std::vector<Vertex>& block, Color color,
                                   std::uint64_t seed = 0);

struct ObstructionReport {
    std::vector<Vertex> witnesses;
    bool infeasible = false;
};

ObstructionReport obstruction_witnesses(const ColoredGraph& g, int r);

}  // namespace hcp
