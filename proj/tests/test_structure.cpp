#include <doctest.h>

#include <cmath>
#include <deque>
#include <numeric>

#include "hcp/hamilton.hpp"
#include "hcp/oracle.hpp"
#include "hcp/randgen.hpp"
#include "hcp/structure.hpp"
#include "support.hpp"

using namespace hcp;
using hcp::testing::make_graph;

namespace {

std::vector<Vertex> all_of(int n) {
    std::vector<Vertex> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

ColoredGraph edgeless(int n, int r = 1) { return ColoredGraph(n, r, {}); }

int bfs_dist(const ColoredGraph& g, Vertex s, Vertex t) {
    std::vector<int> d(g.n(), -1);
    std::deque<Vertex> q{s};
    d[s] = 0;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (auto& nb : g.neighbors(x))
            if (d[nb.vertex] < 0) {
                d[nb.vertex] = d[x] + 1;
                q.push_back(nb.vertex);
            }
    }
    return d[t];
}

ColoredGraph two_cliques(int s) {
    std::vector<Edge> es;
    for (int b = 0; b < 2; ++b)
        for (int u = 0; u < s; ++u)
            for (int v = u + 1; v < s; ++v) es.push_back({Vertex(b * s + u), Vertex(b * s + v), 1});
    return ColoredGraph(2 * s, 1, std::move(es));
}

}  // namespace

TEST_CASE("small set extremes") {
    auto e = small_set(edgeless(50), all_of(50), 1.0);
    CHECK(e.members.size() == 50);
    auto k = small_set(hcp::testing::complete(20), all_of(20), 1.0);
    CHECK(k.members.empty());
    CHECK(k.within_bound);
}

TEST_CASE("small pairs on a star") {
    auto star = make_graph(4, 1, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    // c = 1 puts the threshold below 1, so no leaf is small
    CHECK(check_small_pairs(star, 1.0).pass);
    auto rep = check_small_pairs(star, 20.0);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness);
    Vertex u = (*rep.witness)["u"], v = (*rep.witness)["v"];
    CHECK(u != 0);
    CHECK(v != 0);
    CHECK(bfs_dist(star, u, v) == 2);
    CHECK(check_small_pairs(edgeless(10), 1.0).pass);
}

TEST_CASE("local small density") {
    CHECK(check_local_small_density(edgeless(30), all_of(30), 1.0, 2).pass);
    auto p3 = make_graph(3, 1, {{0, 1, 1}, {1, 2, 1}});
    auto rep = check_local_small_density(p3, all_of(3), 100.0, 1, 2.0);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness);
    CHECK((*rep.witness)["count_at_least"].get<int>() > 2);
}

TEST_CASE("minimum degree") {
    CHECK(min_degree(hcp::testing::complete(4)) == 3);
    CHECK(min_degree(edgeless(5)) == 0);
    CHECK(check_min_degree(hcp::testing::complete(4), 2).pass);
    CHECK_FALSE(check_min_degree(hcp::testing::complete(4), 3).pass);
}

TEST_CASE("disjoint sets edge") {
    CHECK(check_disjoint_sets_edge(hcp::testing::complete(30), 10).pass);
    auto g = two_cliques(12);
    auto rep = check_disjoint_sets_edge(g, 12);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness);
    std::vector<Vertex> a = (*rep.witness)["S1"], b = (*rep.witness)["S2"];
    CHECK(a.size() >= 12);
    CHECK(b.size() >= 12);
    for (Vertex x : a)
        for (Vertex y : b) CHECK_FALSE(g.has_edge(x, y));
    CHECK(check_disjoint_sets_edge(g, 0).vacuous);
}

TEST_CASE("danger sets on extreme graphs") {
    auto scheme = partition_for_profile(64, {64});
    auto k = compute_danger_sets(hcp::testing::complete(64), scheme, {64}, ColorWeights::uniform(1), 0.1,
                                 DangerVariant::theorem1);
    CHECK(k.A_m.empty());
    CHECK(k.am_threshold[1] == doctest::Approx(std::log(64.0) / 25));

    auto e = compute_danger_sets(edgeless(64), scheme, {64}, ColorWeights::uniform(1), 0.1,
                                 DangerVariant::theorem1);
    CHECK(e.A_m.size() == 64);
    CHECK(e.B.size() == 64);
    CHECK_THROWS_AS(compute_danger_sets(edgeless(64), partition_for_profile(64, {64}), {64}, ColorWeights::uniform(1),
                                        0.1, DangerVariant::theorem2),
                    InputError);
}

TEST_CASE("danger set membership re-derives from degrees") {
    const int n = 600;
    auto g = hcp::testing::random_graph(n, 2, p_theorem1(n, 2, 6), 77);
    ProfileVector m{250, 350};
    auto scheme = partition_for_profile(n, m);
    auto rep = compute_danger_sets(g, scheme, m, ColorWeights::uniform(2), 0.1, DangerVariant::theorem1);
    auto owner = scheme.block_of();
    std::vector<char> inA(n, 0), inB(n, 0);
    for (Vertex v : rep.A_m) inA[v] = 1;
    for (Vertex v : rep.B) inB[v] = 1;
    for (int v = 0; v < n; ++v) {
        bool danger = false;
        for (Color c = 1; c <= 2; ++c) {
            int d = 0;
            for (auto& nb : g.neighbors(v)) d += nb.color == c && scheme.color[owner[nb.vertex]] == c;
            double thr = double(m[c - 1]) / n * 0.5 * std::log(double(n)) / 25;
            danger |= d <= thr;
        }
        CHECK(bool(inA[v]) == danger);
        CHECK(bool(inB[v]) == (g.degree(v) <= 50.0 * 2 / (0.1 * 0.5)));
    }
}

TEST_CASE("A star extremes and containment") {
    auto e = compute_A_star(edgeless(100, 2), 0.1, 1.0, ColorWeights::uniform(2));
    CHECK(e.members.size() == 100);
    auto k = compute_A_star(hcp::testing::complete(200), 0.1, 1.0, ColorWeights::uniform(1));
    CHECK(k.members.empty());

    const int n = 1000;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = hcp::testing::random_graph(n, 2, p_theorem1(n, 2, 6), seed);
        ProfileVector m{500, 500};
        auto rep = compute_danger_sets(g, partition_for_profile(n, m), m, ColorWeights::uniform(2), 0.1,
                                       DangerVariant::theorem1);
        auto a = compute_A_star(g, 0.1 / 10, 1.0, ColorWeights::uniform(2));
        CHECK(check_containment(rep.A_m, a).pass);
        auto b = compute_A_star(g, 1.0 / 160, 2.0, ColorWeights::uniform(2));
        CHECK(check_containment(rep.A_m, b).pass);
    }
}

TEST_CASE("planted clique breaks density") {
    const int n = 2000;
    const double rho = 1;
    int s = static_cast<int>(rho * n / (2 * std::log(double(n))));
    auto base = hcp::testing::random_graph(n, 1, 1.1 * std::log(double(n)) / n, 3);
    std::vector<Edge> es = base.edges();
    for (int u = 0; u < s; ++u)
        for (int v = u + 1; v < s; ++v)
            if (!base.has_edge(u, v)) es.push_back({Vertex(u), Vertex(v), 1});
    ColoredGraph g(n, 1, std::move(es));
    double c = 1.1;
    auto rep = check_density(g, rho, c);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness);
    std::vector<Vertex> set = (*rep.witness)["set"];
    CHECK(set.size() <= rho * n / std::log(double(n)));
    long long e = 0;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) e += g.has_edge(set[i], set[j]);
    CHECK(e == (*rep.witness)["edges"].get<long long>());
    CHECK(double(e) > std::exp(1.0) * rho * c * set.size() * std::log(double(n)));

    CHECK(check_density(edgeless(300), rho, c).pass);
    CHECK(check_density(base, rho, c).pass);
}

TEST_CASE("expansion on complete and split color classes") {
    auto k = hcp::testing::complete(40);
    auto rep = check_expansion(k, all_of(40), 1, {}, 1.0, 1.0);
    CHECK(rep.a.pass);
    CHECK(rep.b.pass);
    CHECK(rep.c.pass);
    auto two = two_cliques(10);
    auto r2 = check_expansion(two, all_of(20), 1, {}, 1.0, 1.0);
    CHECK_FALSE(r2.c.pass);
    CHECK(r2.c.witness);
}

TEST_CASE("obstruction witnesses") {
    auto k3 = make_graph(3, 2, {{0, 1, 1}, {1, 2, 1}, {2, 0, 2}});
    auto o = obstruction_witnesses(k3, 2);
    // the two endpoints of the color-2 edge both see colors {1,2}
    CHECK(o.witnesses == std::vector<Vertex>{0, 2});
    CHECK_FALSE(o.infeasible);
    CHECK(exact_hcp(k3).size() == 1);

    CHECK(obstruction_witnesses(hcp::testing::complete(6), 1).witnesses.empty());

    // K_4 core plus three pendant-pair vertices, each degree 2 with colors {1,2}
    auto g = make_graph(7, 2,
                        {{0, 1, 1}, {0, 2, 1}, {0, 3, 2}, {1, 2, 2}, {1, 3, 1}, {2, 3, 1},
                         {4, 0, 1}, {4, 1, 2}, {5, 1, 1}, {5, 2, 2}, {6, 2, 1}, {6, 3, 2}});
    auto w = obstruction_witnesses(g, 2);
    CHECK(w.witnesses.size() >= 3);
    CHECK(w.infeasible);
    CHECK(exact_hcp(g).empty());
}

TEST_CASE("failing refutation checks carry re-validating witnesses") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 200;
        double c = 0.6 + 0.05 * seed;
        auto g = hcp::testing::random_graph(n, 2, c * std::log(double(n)) / n, seed);
        auto b2 = check_small_pairs(g, c);
        if (!b2.pass) {
            REQUIRE(b2.witness);
            Vertex u = (*b2.witness)["u"], v = (*b2.witness)["v"];
            auto small = small_set(g, all_of(n), c);
            CHECK(std::count(small.members.begin(), small.members.end(), u) == 1);
            CHECK(std::count(small.members.begin(), small.members.end(), v) == 1);
            int d = bfs_dist(g, u, v);
            CHECK(d >= 1);
            CHECK(d <= 2);
        }
        auto b5 = check_disjoint_sets_edge(g, 20, seed);
        if (!b5.pass) {
            REQUIRE(b5.witness);
            std::vector<Vertex> a = (*b5.witness)["S1"], b = (*b5.witness)["S2"];
            for (Vertex x : a)
                for (Vertex y : b) CHECK_FALSE(g.has_edge(x, y));
        }
        auto md = check_min_degree(g, 2);
        if (!md.pass) {
            REQUIRE(md.witness);
            CHECK(g.degree((*md.witness)["vertex"].get<Vertex>()) < 3);
        }
        auto den = check_density(g, 1, c);
        CHECK(den.pass == !den.witness.has_value());
    }
}

TEST_CASE("reports serialize") {
    auto rep = check_min_degree(edgeless(3), 1);
    auto j = rep.to_json();
    CHECK(j["pass"] == false);
    CHECK(j.contains("witness"));
    CHECK(j["check"].get<std::string>() == rep.check);
}
