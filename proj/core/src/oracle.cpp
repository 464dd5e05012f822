#include "hcp/oracle.hpp"

#include <algorithm>

#include "hcp/rng.hpp"

namespace hcp {

namespace {

void check_limit(const ColoredGraph& g, const OracleOptions& opt) {
    if (g.n() > opt.limit && !opt.override_limit)
        throw OracleLimitError("oracle refuses n=" + std::to_string(g.n()) + " above limit " +
                               std::to_string(opt.limit) + " without override");
}

// Profile of a cyclic word if it is a rotation of a non-decreasing word in
// one of the two directions.
std::optional<ProfileVector> monotone_profile(const std::vector<Color>& w, int r) {
    int n = static_cast<int>(w.size());
    int desc = 0, asc = 0;
    for (int k = 0; k < n; ++k) {
        Color a = w[k], b = w[(k + 1) % n];
        desc += a > b;
        asc += a < b;
    }
    if (desc > 1 && asc > 1) return std::nullopt;
    ProfileVector m(r, 0);
    for (Color c : w) ++m[c - 1];
    return m;
}

struct CycleSearch {
    const ColoredGraph& g;
    const std::function<bool(const std::vector<Vertex>&)>& visit;
    int n;
    std::vector<Vertex> order;
    std::vector<char> used;
    std::uint64_t count = 0;
    bool stop = false;

    // Every unused vertex must keep at least two usable neighbours (unused or
    // a current path end) for the search to still complete.
    bool feasible(Vertex end) const {
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            int ok = 0;
            for (auto& nb : g.neighbors(v)) {
                if (!used[nb.vertex] || nb.vertex == end || nb.vertex == 0) {
                    if (++ok >= 2) break;
                }
            }
            if (ok < 2) return false;
        }
        return true;
    }

    void dfs(int depth) {
        if (stop) return;
        Vertex end = order[depth - 1];
        if (depth == n) {
            if (g.has_edge(end, 0) && order[1] < order[n - 1]) {
                ++count;
                if (!visit(order)) stop = true;
            }
            return;
        }
        if (depth >= 2 && !feasible(end)) return;
        for (auto& nb : g.neighbors(end)) {
            Vertex w = nb.vertex;
            if (used[w]) continue;
            // canonical direction: second vertex is smaller than the last one,
            // so the last vertex cannot be below order[1]
            if (depth == n - 1 && w < order[1]) continue;
            used[w] = 1;
            order[depth] = w;
            dfs(depth + 1);
            used[w] = 0;
            if (stop) return;
        }
    }
};

}  // namespace

std::uint64_t graph_hash(const ColoredGraph& g) {
    std::vector<std::uint64_t> keys;
    keys.reserve(g.edge_count());
    for (auto& e : g.edges())
        keys.push_back((static_cast<std::uint64_t>(e.u) << 40) ^ (static_cast<std::uint64_t>(e.v) << 16) ^
                       e.color);
    std::sort(keys.begin(), keys.end());
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(g.n()) * 1315423911ULL + g.r());
    for (auto k : keys) h = splitmix64(h ^ k);
    return h;
}

std::uint64_t enumerate_hamilton_cycles(const ColoredGraph& g,
                                        const std::function<bool(const std::vector<Vertex>&)>& visit,
                                        OracleOptions opt) {
    check_limit(g, opt);
    int n = g.n();
    if (n < 3) return 0;
    CycleSearch s{g, visit, n, std::vector<Vertex>(n, 0), std::vector<char>(n, 0)};
    s.used[0] = 1;
    s.dfs(1);
    return s.count;
}

std::vector<std::vector<Vertex>> hamilton_cycles(const ColoredGraph& g, OracleOptions opt) {
    std::vector<std::vector<Vertex>> out;
    enumerate_hamilton_cycles(
        g,
        [&](const std::vector<Vertex>& o) {
            out.push_back(o);
            return true;
        },
        opt);
    return out;
}

std::set<ProfileVector> profiles_of_cycle(const std::vector<Color>& word, int r) {
    std::set<ProfileVector> out;
    int n = static_cast<int>(word.size());
    if (n == 0) return out;
    for (Color c : word)
        if (c < 1 || c > r) throw InputError("color outside 1..r in word");
    for (int dir = 0; dir < 2; ++dir) {
        for (int s = 0; s < n; ++s) {
            bool mono = true;
            for (int k = 0; k + 1 < n && mono; ++k) {
                Color a = dir == 0 ? word[(s + k) % n] : word[(s - k + 2 * n) % n];
                Color b = dir == 0 ? word[(s + k + 1) % n] : word[(s - k - 1 + 2 * n) % n];
                mono = a <= b;
            }
            if (!mono) continue;
            ProfileVector m(r, 0);
            for (Color c : word) ++m[c - 1];
            out.insert(std::move(m));
        }
    }
    return out;
}

ProfileSet exact_hcp(const ColoredGraph& g, OracleOptions opt) {
    ProfileSet ps;
    ps.n = g.n();
    ps.r = g.r();
    ps.graph_hash = graph_hash(g);
    std::vector<Color> w(g.n());
    enumerate_hamilton_cycles(
        g,
        [&](const std::vector<Vertex>& o) {
            for (std::size_t k = 0; k < o.size(); ++k) w[k] = g.color_of(o[k], o[(k + 1) % o.size()]);
            if (auto m = monotone_profile(w, g.r())) ps.profiles.insert(*m);
            return true;
        },
        opt);
    return ps;
}

std::optional<HamiltonCertificate> exact_certificate(const ColoredGraph& g, const ProfileVector& m,
                                                     OracleOptions opt) {
    check_limit(g, opt);
    const int n = g.n();
    const int r = g.r();
    validate_profile(m, n, r);
    if (n < 3) return std::nullopt;
    std::vector<Color> pattern;
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < m[i]; ++t) pattern.push_back(static_cast<Color>(i + 1));

    std::vector<Vertex> order(n, 0);
    std::vector<char> used(n, 0);
    // order[0] = 0; the color word is shifted by s so vertex 0 may sit anywhere.
    for (int s = 0; s < n; ++s) {
        auto col = [&](int k) { return pattern[(k + s) % n]; };
        std::fill(used.begin(), used.end(), 0);
        used[0] = 1;
        bool found = false;
        std::function<void(int)> dfs = [&](int depth) {
            if (found) return;
            Vertex end = order[depth - 1];
            if (depth == n) {
                if (g.color_of(end, 0) == col(n - 1)) found = true;
                return;
            }
            Color need = col(depth - 1);
            for (auto& nb : g.neighbors(end)) {
                if (nb.color != need || used[nb.vertex]) continue;
                used[nb.vertex] = 1;
                order[depth] = nb.vertex;
                dfs(depth + 1);
                used[nb.vertex] = 0;
                if (found) return;
            }
        };
        dfs(1);
        if (found) return certificate_from_cycle(order, m, (n - s) % n);
    }
    return std::nullopt;
}

}  // namespace hcp
