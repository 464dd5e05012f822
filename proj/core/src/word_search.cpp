#include <algorithm>

#include "engine.hpp"

namespace hcp::detail {

namespace {

struct WordWalk {
    const ColoredGraph& g;
    const std::vector<Color>& w;  // w[k] = color of path edge k, w[n-1] the closing edge
    int n;
    std::vector<Vertex> path;
    std::vector<int> pos;

    WordWalk(const ColoredGraph& g_, const std::vector<Color>& w_)
        : g(g_), w(w_), n(g_.n()), pos(g_.n(), -1) {}

    void reset(Vertex v) {
        for (Vertex x : path) pos[x] = -1;
        path.assign(1, v);
        pos[v] = 0;
    }
    void set(std::vector<Vertex> p) {
        for (Vertex x : path) pos[x] = -1;
        path = std::move(p);
        for (std::size_t i = 0; i < path.size(); ++i) pos[path[i]] = static_cast<int>(i);
    }
    void truncate(std::size_t len) {
        while (path.size() > len) {
            pos[path.back()] = -1;
            path.pop_back();
        }
    }

    // color the edge leaving the end must have
    Color need(std::size_t len) const { return w[len - 1]; }

    bool closes(Vertex e) const { return g.color_of(e, path.front()) == w[n - 1]; }

    bool extendable(Vertex e, std::size_t len) const {
        if (static_cast<int>(len) == n) return closes(e);
        Color c = need(len);
        for (auto& nb : g.neighbors(e))
            if (nb.color == c && pos[nb.vertex] < 0) return true;
        return false;
    }

    int onward(Vertex u, std::size_t len) const {
        if (static_cast<int>(len) + 1 >= n) return 0;
        Color c = w[len];
        int d = 0;
        for (auto& nb : g.neighbors(u)) d += nb.color == c && pos[nb.vertex] < 0;
        return d;
    }

    void extend(Rng& rng) {
        std::vector<Vertex> best;
        while (static_cast<int>(path.size()) < n) {
            std::size_t len = path.size();
            Color c = need(len);
            best.clear();
            int bk = 0;
            // now and then ignore the degree rule (but never walk into a dead end)
            bool wander = rng.below(4) == 0;
            for (auto& nb : g.neighbors(path.back())) {
                if (nb.color != c || pos[nb.vertex] >= 0) continue;
                int k = onward(nb.vertex, len + 1);
                if (static_cast<int>(len) + 1 < n && k == 0) k = 1 << 20;
                else if (wander) k = 0;
                if (best.empty() || k < bk) {
                    best.assign(1, nb.vertex);
                    bk = k;
                } else if (k == bk) {
                    best.push_back(nb.vertex);
                }
            }
            if (best.empty()) return;
            Vertex u = best[rng.below(best.size())];
            pos[u] = static_cast<int>(path.size());
            path.push_back(u);
        }
    }

    // Reversing path[i+1..k] keeps the word when the chord has color w[i] and
    // w is symmetric on [i+1, k-1].
    static bool rotatable(const std::vector<Color>& w, std::size_t i, std::size_t k) {
        for (std::size_t a = i + 1, b = k - 1; a < b; ++a, --b)
            if (w[a] != w[b]) return false;
        return true;
    }

    // Breadth-first rotations with the first vertex fixed, until an end that
    // can be extended (or closes the cycle).
    bool rotate(std::size_t cap) {
        const std::size_t len = path.size();
        if (len < 3) return false;
        std::vector<std::vector<Vertex>> nodes{path};
        std::vector<char> seen(n, 0);
        seen[path.back()] = 1;
        std::vector<int> at(n, -1);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const auto P = nodes[q];
            for (std::size_t i = 0; i < len; ++i) at[P[i]] = static_cast<int>(i);
            Vertex e = P.back();
            for (auto& nb : g.neighbors(e)) {
                int ii = at[nb.vertex];
                if (ii < 0 || pos[nb.vertex] < 0) continue;
                std::size_t i = static_cast<std::size_t>(ii);
                if (i + 2 >= len || nb.color != w[i] || !rotatable(w, i, len - 1)) continue;
                Vertex ne = P[i + 1];
                if (seen[ne]) continue;
                seen[ne] = 1;
                std::vector<Vertex> R = P;
                std::reverse(R.begin() + static_cast<std::ptrdiff_t>(i) + 1, R.end());
                if (extendable(ne, len)) {
                    set(std::move(R));
                    return true;
                }
                if (nodes.size() < cap) nodes.push_back(std::move(R));
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Vertex>> word_cycle(const ColoredGraph& g, const std::vector<Color>& word, Rng& rng,
                                              int tries, std::size_t cap) {
    const int n = g.n();
    if (n < 3 || static_cast<int>(word.size()) != n) return std::nullopt;
    WordWalk ww(g, word);
    for (int t = 0; t < tries; ++t) {
        ww.reset(static_cast<Vertex>(rng.below(n)));
        // backtracking budget per try
        int budget = 4 * n;
        for (;;) {
            ww.extend(rng);
            const std::size_t len = ww.path.size();
            if (static_cast<int>(len) == n && ww.closes(ww.path.back())) return ww.path;
            if (ww.extendable(ww.path.back(), len)) continue;
            if (ww.rotate(cap)) {
                if (static_cast<int>(ww.path.size()) == n && ww.closes(ww.path.back())) return ww.path;
                continue;
            }
            if (--budget < 0 || len <= 1) break;
            ww.truncate(len - 1 - rng.below(std::min<std::size_t>(3, len - 1)));
        }
    }
    return std::nullopt;
}

}  // namespace hcp::detail
