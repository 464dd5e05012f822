#include <doctest.h>

#include <cmath>
#include <set>

#include "hcp/randgen.hpp"
#include "hcp/rng.hpp"
#include "support.hpp"

using namespace hcp;

namespace {

GenSpec spec(int n, double p, ColorWeights a, std::uint64_t seed) {
    GenSpec s;
    s.n = n;
    s.p = p;
    s.alpha = std::move(a);
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("extreme probabilities") {
    CHECK(gen_colored_gnp(spec(40, 0, ColorWeights::uniform(2), 1)).edge_count() == 0);
    auto k = gen_colored_gnp(spec(40, 1, ColorWeights::uniform(1), 1));
    CHECK(k.edge_count() == 40 * 39 / 2);
    for (auto& e : k.edges()) CHECK(e.color == 1);

    CHECK(gen_colored_dnp(spec(30, 0, ColorWeights::uniform(2), 1)).arc_count() == 0);
    CHECK(gen_colored_dnp(spec(30, 1, ColorWeights::uniform(2), 1)).arc_count() == 30 * 29);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(spec(10, 1.5, ColorWeights::uniform(2), 0).validate(), InputError);
    CHECK_THROWS_AS(spec(0, 0.5, ColorWeights::uniform(2), 0).validate(), InputError);
}

TEST_CASE("edge counts and color split stay within four sigma") {
    const int n = 2000;
    const double p = 0.01;
    const double N = n * (n - 1) / 2.0;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        auto g = gen_colored_gnp(spec(n, p, ColorWeights({0.5, 0.5}), seed));
        double e = static_cast<double>(g.edge_count());
        CHECK(std::abs(e - N * p) <= 4 * std::sqrt(N * p * (1 - p)));
        double ones = 0;
        for (auto& x : g.edges()) ones += x.color == 1;
        CHECK(std::abs(ones - e / 2) <= 4 * std::sqrt(e / 4));
    }
}

TEST_CASE("arc counts stay within four sigma") {
    const int n = 1000;
    const double p = 0.005;
    const double N = double(n) * (n - 1);
    for (std::uint64_t seed : {7u, 8u, 9u}) {
        auto d = gen_colored_dnp(spec(n, p, ColorWeights::uniform(3), seed));
        CHECK(std::abs(double(d.arc_count()) - N * p) <= 4 * std::sqrt(N * p * (1 - p)));
    }
}

TEST_CASE("generation is deterministic") {
    auto a = gen_colored_gnp(spec(300, 0.05, ColorWeights::uniform(3), 42));
    auto b = gen_colored_gnp(spec(300, 0.05, ColorWeights::uniform(3), 42));
    auto c = gen_colored_gnp(spec(300, 0.05, ColorWeights::uniform(3), 43));
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() != c.edges());
}

TEST_CASE("layer split does not change which pairs are present") {
    const int n = 400;
    double p = p_theorem1(n, 2, 6);
    auto s = spec(n, p, ColorWeights::uniform(2), 23);
    auto a = gen_layered_gnp(s, theorem1_layers(n, 2, p, 6));
    auto b = gen_layered_gnp(s, theorem2_layers(n, 0.5, p, 6));
    CHECK(a.graph.edges() == b.graph.edges());
}

TEST_CASE("layered graph is the plain graph with tags") {
    const int n = 500;
    double p = p_theorem1(n, 2, 6);
    auto s = spec(n, p, ColorWeights::uniform(2), 17);
    auto layers = theorem1_layers(n, 2, p, 6);
    auto lg = gen_layered_gnp(s, layers);
    auto plain = gen_colored_gnp(s);
    CHECK(lg.graph.edges() == plain.edges());
    CHECK(lg.layer.size() == lg.graph.edge_count());
    std::set<int> seen(lg.layer.begin(), lg.layer.end());
    CHECK(*seen.begin() >= 1);
    CHECK(*seen.rbegin() <= static_cast<int>(layers.size()));
    CHECK(layer_subgraph(lg, static_cast<int>(layers.size())).edge_count() == lg.graph.edge_count());

    double prod = 1;
    for (double q : layers) prod *= 1 - q;
    CHECK(std::abs((1 - p) - prod) <= 1e-12 * (1 - p));
}

TEST_CASE("split probability") {
    auto a = split_probability(0.5, {0.5});
    CHECK(a.size() == 2);
    CHECK(a[1] == doctest::Approx(0.0).epsilon(1e-12));
    auto b = split_probability(0.75, {0.5});
    CHECK(b[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(split_probability(0.3, {0.5}), InfeasibleSplit);

    const int n = 10000;
    const double omega = 6 * std::log(std::log(double(n)));
    double p = p_theorem1(n, 2, omega);
    double p1 = p_theorem1(n, 2, omega / 2);
    auto s = split_probability(p, {p1});
    double want = omega / (2.0 * n);
    CHECK(std::abs(s[1] - want) / want < 0.01);
    CHECK(std::abs((1 - p) - (1 - s[0]) * (1 - s[1])) <= 1e-12 * (1 - p));
}

TEST_CASE("coupling at the extremes is empty") {
    auto col = sample_pair_coloring(50, ColorWeights::uniform(2), 3);
    for (double p : {0.0, 1.0}) {
        auto cs = couple_digraph(50, 2, col, p, 4);
        CHECK(cs.g_q.edge_count() == 0);
        CHECK(cs.d_star.arc_count() == 0);
    }
}

TEST_CASE("coupling invariants") {
    const int n = 500;
    auto col = sample_pair_coloring(n, ColorWeights::uniform(2), 5);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto cs = couple_digraph(n, 2, col, 0.5, seed);
        CHECK(cs.g_q.edge_count() == cs.d_star.arc_count());
        for (auto& e : cs.g_q.edges()) {
            bool f = cs.d_star.has_arc(e.u, e.v), b = cs.d_star.has_arc(e.v, e.u);
            CHECK(f != b);
            CHECK(e.color == col[pair_index(n, e.u, e.v)]);
        }
        for (auto& a : cs.d_star.arcs()) CHECK(cs.g_q.has_edge(a.from, a.to));
    }
}
