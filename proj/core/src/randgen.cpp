#include "hcp/randgen.hpp"

#include <algorithm>
#include <cmath>

#include "hcp/rng.hpp"

namespace hcp {

namespace {

constexpr std::uint64_t kEdgeStage = 0;
constexpr std::uint64_t kColorStage = 1;
constexpr std::uint64_t kArcStage = 2;
constexpr std::uint64_t kArcColorStage = 3;
constexpr std::uint64_t kFixedColorStage = 4;
constexpr std::uint64_t kCoupleStage = 5;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double loglog(int n) { return std::log(std::log(static_cast<double>(n))); }

}  // namespace

double default_omega(int n) {
    if (n < 3) return 0;
    return 3.0 * loglog(n);
}

double p_theorem1(int n, int r, double omega) {
    if (n < 3) return 1.0;
    return clamp01((std::log(static_cast<double>(n)) + r * loglog(n) + omega) / n);
}

double p_theorem2(int n, double alpha_min, double omega) {
    if (n < 3) return 1.0;
    return clamp01((std::log(static_cast<double>(n)) + loglog(n) + omega) / (alpha_min * n));
}

void GenSpec::validate() const {
    if (n < 1) throw InputError("n must be >= 1");
    if (!(p >= 0 && p <= 1)) throw InputError("p must lie in [0,1]");
    if (alpha.r() < 1) throw InputError("alpha is empty");
}

GenSpec GenSpec::theorem1(int n, ColorWeights alpha, double omega, std::uint64_t seed) {
    GenSpec s;
    s.n = n;
    s.p = p_theorem1(n, alpha.r(), omega);
    s.alpha = std::move(alpha);
    s.seed = seed;
    return s;
}

GenSpec GenSpec::theorem2(int n, ColorWeights alpha, double omega, std::uint64_t seed) {
    GenSpec s;
    s.n = n;
    s.p = p_theorem2(n, alpha.min(), omega);
    s.alpha = std::move(alpha);
    s.seed = seed;
    return s;
}

std::vector<double> split_probability(double p, const std::vector<double>& leading) {
    if (!(p >= 0 && p <= 1)) throw InputError("p must lie in [0,1]");
    double prod = 1.0;
    for (double q : leading) {
        if (!(q >= 0 && q <= 1)) throw InputError("layer probability outside [0,1]");
        prod *= 1.0 - q;
    }
    double last;
    if (prod == 0.0) {
        if (p < 1.0) throw InfeasibleSplit("leading layers already cover every pair");
        last = 0.0;
    } else {
        last = 1.0 - (1.0 - p) / prod;
        if (last < -1e-12)
            throw InfeasibleSplit("leading layer probabilities exceed the total p");
        last = clamp01(last);
    }
    auto out = leading;
    out.push_back(last);
    return out;
}

std::vector<double> theorem1_layers(int n, int r, double p, double omega) {
    double p1 = std::min(p, p_theorem1(n, r, omega / 2));
    return split_probability(p, {p1});
}

std::vector<double> theorem2_layers(int n, double alpha_min, double p, double omega) {
    double p1 = std::min(p, p_theorem2(n, alpha_min, omega / 2));
    // p_2 = p_3: both solve (1-p) = (1-p_1)(1-x)^2
    double rest = (1.0 - p) / (1.0 - p1);
    double x = 1.0 - std::sqrt(std::max(0.0, rest));
    return split_probability(p, {p1, clamp01(x)});
}

ColoredGraph gen_colored_gnp(const GenSpec& spec) {
    return gen_layered_gnp(spec, {spec.p}).graph;
}

LayeredGraph gen_layered_gnp(const GenSpec& spec, const std::vector<double>& layer_p) {
    spec.validate();
    if (layer_p.empty()) throw InputError("at least one layer required");
    // One uniform per pair decides presence (u < p); the interval [0,p) is cut
    // into pieces of mass P(first fired layer = k).
    std::vector<double> cut;
    double acc = 0, miss = 1;
    for (double q : layer_p) {
        acc += miss * q;
        miss *= 1.0 - q;
        cut.push_back(acc);
    }
    if (std::abs(acc - spec.p) > 1e-9)
        throw InputError("layer probabilities do not compose to p");
    cut.back() = spec.p;

    const int n = spec.n;
    std::vector<Edge> edges;
    std::vector<std::uint8_t> layer;
    edges.reserve(static_cast<std::size_t>(spec.p * n * (n - 1) / 2 * 1.1) + 16);
    std::uint64_t idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            double x = derive_unit(spec.seed, idx, kEdgeStage);
            if (!(x < spec.p)) continue;
            Color c = spec.alpha.sample(derive_unit(spec.seed, idx, kColorStage));
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), c});
            std::uint8_t k = 0;
            while (k + 1 < cut.size() && x >= cut[k]) ++k;
            layer.push_back(static_cast<std::uint8_t>(k + 1));
        }
    }
    return {ColoredGraph(n, spec.alpha.r(), std::move(edges)), std::move(layer), layer_p};
}

std::vector<std::uint8_t> tag_layers(const ColoredGraph& g, const std::vector<double>& layer_p,
                                     std::uint64_t seed) {
    std::vector<double> mass;
    double miss = 1, total = 0;
    for (double q : layer_p) {
        mass.push_back(miss * q);
        total += miss * q;
        miss *= 1.0 - q;
    }
    std::vector<std::uint8_t> out(g.edge_count(), 1);
    if (total <= 0) return out;
    Rng rng(seed);
    for (auto& t : out) {
        double x = rng.unit() * total, acc = 0;
        std::uint8_t k = 0;
        while (k + 1 < mass.size() && x >= (acc += mass[k])) ++k;
        t = static_cast<std::uint8_t>(k + 1);
    }
    return out;
}

ColoredGraph layer_subgraph(const LayeredGraph& lg, int max_layer) {
    std::vector<Edge> keep;
    const auto& e = lg.graph.edges();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (lg.layer[i] <= max_layer) keep.push_back(e[i]);
    return ColoredGraph(lg.graph.n(), lg.graph.r(), std::move(keep));
}

ColoredDigraph gen_colored_dnp(const GenSpec& spec) {
    spec.validate();
    const int n = spec.n;
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            std::uint64_t idx = static_cast<std::uint64_t>(u) * n + v;
            if (!(derive_unit(spec.seed, idx, kArcStage) < spec.p)) continue;
            Color c = spec.alpha.sample(derive_unit(spec.seed, idx, kArcColorStage));
            arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), c});
        }
    }
    return ColoredDigraph(n, spec.alpha.r(), std::move(arcs));
}

std::vector<Color> sample_pair_coloring(int n, const ColorWeights& alpha, std::uint64_t seed) {
    std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::vector<Color> c(pairs);
    for (std::uint64_t i = 0; i < pairs; ++i)
        c[i] = alpha.sample(derive_unit(seed, i, kFixedColorStage));
    return c;
}

CoupledSample couple_digraph(int n, int r, const std::vector<Color>& coloring, double p,
                             std::uint64_t seed) {
    if (!(p >= 0 && p <= 1)) throw InputError("p must lie in [0,1]");
    std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (coloring.size() != pairs) throw InputError("coloring must cover every pair");
    std::vector<Edge> edges;
    std::vector<Arc> arcs;
    std::uint64_t idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            bool uv = derive_unit(seed, 2 * idx, kCoupleStage) < p;
            bool vu = derive_unit(seed, 2 * idx + 1, kCoupleStage) < p;
            if (uv == vu) continue;
            Color c = coloring[idx];
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), c});
            if (uv)
                arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), c});
            else
                arcs.push_back({static_cast<Vertex>(v), static_cast<Vertex>(u), c});
        }
    }
    return {ColoredGraph(n, r, std::move(edges)), ColoredDigraph(n, r, std::move(arcs))};
}

}  // namespace hcp
