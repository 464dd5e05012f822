#pragma once

// Small helpers shared by the unit tests, including a deliberately naive
// reference for Hamilton cycles and color profiles (permutation scan, no pruning).

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "hcp/model.hpp"
#include "hcp/randgen.hpp"

namespace hcp::testing {

inline ColoredGraph make_graph(int n, int r, std::vector<std::tuple<int, int, int>> es) {
    std::vector<Edge> edges;
    for (auto [u, v, c] : es) edges.push_back({Vertex(u), Vertex(v), Color(c)});
    return ColoredGraph(n, r, std::move(edges));
}

inline ColoredGraph complete(int n, int r = 1, Color c = 1) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({Vertex(u), Vertex(v), c});
    return ColoredGraph(n, r, std::move(edges));
}

inline ColoredGraph random_graph(int n, int r, double p, std::uint64_t seed) {
    GenSpec s;
    s.n = n;
    s.p = p;
    s.alpha = ColorWeights::uniform(r);
    s.seed = seed;
    return gen_colored_gnp(s);
}

// Profile read off a cyclic word if it is c_1^{m_1} ... c_r^{m_r} starting at `start`.
inline bool monotone_from(const std::vector<Color>& w, int start, int dir, int r, ProfileVector& m) {
    const int n = static_cast<int>(w.size());
    m.assign(r, 0);
    int last = 0;
    for (int k = 0; k < n; ++k) {
        int i = ((start + dir * k) % n + n) % n;
        if (w[i] < last) return false;
        last = w[i];
        ++m[w[i] - 1];
    }
    return true;
}

inline std::set<ProfileVector> naive_profiles_of_word(const std::vector<Color>& w, int r) {
    std::set<ProfileVector> out;
    const int n = static_cast<int>(w.size());
    ProfileVector m;
    for (int s = 0; s < n; ++s)
        for (int dir : {1, -1}) {
            // reversed traversal reads edge s-1, s-2, ...
            int start = dir == 1 ? s : (s - 1 + n) % n;
            if (monotone_from(w, start, dir, r, m)) out.insert(m);
        }
    return out;
}

struct NaiveResult {
    long cycles = 0;
    std::set<ProfileVector> profiles;
};

inline NaiveResult naive_hcp(const ColoredGraph& g) {
    NaiveResult res;
    const int n = g.n();
    if (n < 3) return res;
    std::vector<Vertex> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    do {
        if (rest.front() > rest.back()) continue;
        bool ok = g.has_edge(0, rest.front()) && g.has_edge(rest.back(), 0);
        for (int i = 0; ok && i + 1 < n - 1; ++i) ok = g.has_edge(rest[i], rest[i + 1]);
        if (!ok) continue;
        ++res.cycles;
        std::vector<Vertex> order{0};
        order.insert(order.end(), rest.begin(), rest.end());
        auto p = naive_profiles_of_word(color_word(g, order), g.r());
        res.profiles.insert(p.begin(), p.end());
    } while (std::next_permutation(rest.begin(), rest.end()));
    return res;
}

inline ProfileVector word_counts(const ColoredGraph& g, const HamiltonCertificate& c) {
    ProfileVector m(g.r(), 0);
    for (Color x : color_word(g, c.order)) ++m[x - 1];
    return m;
}

}  // namespace hcp::testing
