#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hcp/model.hpp"

namespace hcp {

struct InfeasibleSplit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double default_omega(int n);
// (log n + r log log n + omega) / n, clamped to [0,1].
double p_theorem1(int n, int r, double omega);
// (log n + log log n + omega) / (alpha_min n), clamped to [0,1].
double p_theorem2(int n, double alpha_min, double omega);

struct GenSpec {
    int n = 0;
    double p = 0;
    ColorWeights alpha;
    std::uint64_t seed = 0;

    void validate() const;

    static GenSpec theorem1(int n, ColorWeights alpha, double omega, std::uint64_t seed);
    static GenSpec theorem2(int n, ColorWeights alpha, double omega, std::uint64_t seed);
};

// Solves (1-p) = prod (1-p_i) for the last entry given the leading ones.
std::vector<double> split_probability(double p, const std::vector<double>& leading);

ColoredGraph gen_colored_gnp(const GenSpec& spec);

// Same graph as gen_colored_gnp, with each edge tagged by the first layer of
// the split (p_1, ..., p_k) that contains it. Layers are 1-based.
struct LayeredGraph {
    ColoredGraph graph;
    std::vector<std::uint8_t> layer;  // parallel to graph.edges()
    std::vector<double> layer_p;
};

LayeredGraph gen_layered_gnp(const GenSpec& spec, const std::vector<double>& layer_p);

// Random layer tags for an existing graph, each edge falling in layer k with
// probability P(first fired layer = k | some layer fired).
std::vector<std::uint8_t> tag_layers(const ColoredGraph& g, const std::vector<double>& layer_p,
                                     std::uint64_t seed);

// Edges of layers 1..max_layer.
ColoredGraph layer_subgraph(const LayeredGraph& lg, int max_layer);

// Layer probabilities used by the constructive proofs: two layers with
// omega/2 in the first for the r log log n threshold, three layers for the
// alpha_min threshold.
std::vector<double> theorem1_layers(int n, int r, double p, double omega);
std::vector<double> theorem2_layers(int n, double alpha_min, double p, double omega);

ColoredDigraph gen_colored_dnp(const GenSpec& spec);

// Fixed coloring of all pairs of [n], indexed by pair_index.
std::vector<Color> sample_pair_coloring(int n, const ColorWeights& alpha, std::uint64_t seed);

struct CoupledSample {
    ColoredGraph g_q;
    ColoredDigraph d_star;
};

CoupledSample couple_digraph(int n, int r, const std::vector<Color>& coloring, double p,
                             std::uint64_t seed);

}  // namespace hcp
