#include <algorithm>
#include <set>

#include "hcp/hamilton.hpp"
#include "hcp/rng.hpp"

namespace hcp {

const char* to_string(Stage s) {
    switch (s) {
        case Stage::none: return "none";
        case Stage::stage1: return "stage1";
        case Stage::stage2: return "stage2";
        case Stage::stage3: return "stage3";
        case Stage::glue: return "glue";
        case Stage::infeasible: return "infeasible";
    }
    return "?";
}

PartitionScheme partition_for_profile(int n, const ProfileVector& m) {
    validate_profile(m, n, static_cast<int>(m.size()));
    PartitionScheme s;
    s.kind = SchemeKind::theorem1;
    s.n = n;
    Vertex next = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<Vertex> blk(m[i]);
        for (auto& v : blk) v = next++;
        s.blocks.push_back(std::move(blk));
        s.roles.push_back("V_" + std::to_string(i + 1));
        s.color.push_back(static_cast<Color>(i + 1));
    }
    return s;
}

std::vector<Color> small_colors(int n, const ProfileVector& m) {
    std::vector<Color> out;
    double lim = static_cast<double>(n) / (4.0 * m.size());
    for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] >= 1 && m[j] <= lim) out.push_back(static_cast<Color>(j + 1));
    return out;
}

PartitionScheme partition_theorem2(int n, const ProfileVector& m, int sigma, const std::vector<Color>& colors) {
    int r = static_cast<int>(m.size());
    if (sigma < 0 || sigma >= r) throw InputError("sigma must lie in [0, r)");
    if (!colors.empty() && static_cast<int>(colors.size()) != r) throw InputError("color map size mismatch");
    validate_profile(m, n, r);
    auto col = [&](int j) { return colors.empty() ? static_cast<Color>(j + 1) : colors[j]; };

    PartitionScheme s;
    s.kind = SchemeKind::theorem2;
    s.n = n;
    s.sigma = sigma;
    int star = n / 2;
    int parts = sigma + 1;
    Vertex next = 0;
    for (int b = 0; b < parts; ++b) {
        int sz = star / parts + (b < star % parts ? 1 : 0);
        std::vector<Vertex> blk(sz);
        for (auto& v : blk) v = next++;
        s.blocks.push_back(std::move(blk));
        s.roles.push_back("V_" + std::to_string(b));
        s.color.push_back(b == 0 ? Color{0} : col(b - 1));
    }
    long long big = 0;
    for (int i = sigma; i < r; ++i) big += m[i];
    if (big <= 0) throw InputError("no large colors");
    int rest = n - star;
    for (int i = sigma; i < r; ++i) {
        int sz = i + 1 < r ? static_cast<int>(static_cast<double>(n) / 2.0 * m[i] / big)
                           : n - static_cast<int>(next);
        sz = std::min(sz, n - static_cast<int>(next));
        std::vector<Vertex> blk(sz);
        for (auto& v : blk) v = next++;
        s.blocks.push_back(std::move(blk));
        s.roles.push_back("V_" + std::to_string(i + 1));
        s.color.push_back(col(i));
    }
    (void)rest;
    return s;
}

std::string CherrySystem::check(const ColoredGraph& g, const std::vector<Vertex>& A_m) const {
    std::set<Vertex> seen, centers;
    for (auto& q : cherries) {
        for (Vertex x : {q.w1, q.v, q.w2})
            if (!seen.insert(x).second) return "cherries share vertex " + std::to_string(x);
        if (g.color_of(q.v, q.w1) != q.color || g.color_of(q.v, q.w2) != q.color)
            return "cherry at " + std::to_string(q.v) + " is not monochromatic in color " + std::to_string(q.color);
        centers.insert(q.v);
    }
    std::set<Vertex> a(A_m.begin(), A_m.end());
    if (a != centers) return "cherry centers do not match A_m";
    return {};
}

std::vector<std::array<Vertex, 2>> CherrySystem::partners(int n, Color color) const {
    std::vector<std::array<Vertex, 2>> p(n, {kNoVertex, kNoVertex});
    auto add = [&](Vertex a, Vertex b) {
        if (p[a][0] == kNoVertex) p[a][0] = b;
        else p[a][1] = b;
    };
    for (auto& q : cherries) {
        if (q.color != color) continue;
        add(q.v, q.w1);
        add(q.v, q.w2);
        add(q.w1, q.v);
        add(q.w2, q.v);
    }
    return p;
}

CherryPlacement place_cherries(const ColoredGraph& g, const PartitionScheme& scheme, const DangerReport& danger,
                               std::optional<Color> force_color) {
    const int n = g.n();
    CherryPlacement out;
    out.scheme = scheme;
    if (danger.A_m.empty()) return out;

    auto owner = scheme.block_of();
    std::vector<char> inA(n, 0), used(n, 0);
    for (Vertex v : danger.A_m) inA[v] = 1;

    for (Vertex v : danger.A_m) {
        Color best = 0;
        std::vector<Vertex> bestW;
        for (Color c = 1; c <= g.r(); ++c) {
            if (force_color && c != *force_color) continue;
            int host = scheme.block_for_color(c);
            if (host < 0 || scheme.blocks[host].size() < 3) continue;
            std::vector<Vertex> ws;
            for (auto& nb : g.neighbors(v))
                if (nb.color == c && !inA[nb.vertex] && !used[nb.vertex]) ws.push_back(nb.vertex);
            if (ws.size() >= 2 && ws.size() > bestW.size()) {
                best = c;
                bestW = std::move(ws);
            }
        }
        if (!best) throw StageError(Stage::stage1, "no monochromatic pair outside A_m at vertex " + std::to_string(v));
        // prefer partners already in the host block
        int host = scheme.block_for_color(best);
        std::stable_sort(bestW.begin(), bestW.end(),
                         [&](Vertex a, Vertex b) { return (owner[a] == host) > (owner[b] == host); });
        Cherry q{bestW[0], v, bestW[1], best, host};
        used[q.v] = used[q.w1] = used[q.w2] = 1;

        std::vector<char> nearV(n, 0);
        nearV[v] = 1;
        for (auto& nb : g.neighbors(v)) nearV[nb.vertex] = 1;
        for (Vertex x : {q.w1, q.v, q.w2}) {
            if (owner[x] == host) continue;
            Vertex swap = kNoVertex;
            for (int y = 0; y < n; ++y)
                if (owner[y] == host && !inA[y] && !used[y] && !nearV[y]) {
                    swap = static_cast<Vertex>(y);
                    break;
                }
            if (swap == kNoVertex)
                throw StageError(Stage::stage1, "no exchange vertex for cherry at " + std::to_string(v));
            owner[swap] = owner[x];
            owner[x] = host;
        }
        out.system.cherries.push_back(q);
    }

    for (auto& blk : out.scheme.blocks) blk.clear();
    for (int v = 0; v < n; ++v)
        if (owner[v] >= 0) out.scheme.blocks[owner[v]].push_back(static_cast<Vertex>(v));
    return out;
}

SolverState::SolverState(const ColoredGraph& g) : g_(&g) {
    open_.assign(g.edge_count(), 0);
    adj_.resize(g.n());
    pools_.resize(g.r() + 1);
    cursor_.assign(g.r() + 1, 0);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) open_edge(e);
}

SolverState::SolverState(const ColoredGraph& g, const std::vector<std::uint8_t>& layer, std::uint64_t seed)
    : g_(&g) {
    if (layer.size() != g.edge_count()) throw InputError("layer tags do not match the edge list");
    open_.assign(g.edge_count(), 0);
    adj_.resize(g.n());
    pools_.resize(g.r() + 1);
    cursor_.assign(g.r() + 1, 0);
    Rng rng(derive(seed, 0, 7));
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        if (layer[e] <= 1) open_edge(e);
        else pools_[rng.below(pools_.size())].push_back(e);
    }
    for (auto& p : pools_) std::shuffle(p.begin(), p.end(), rng);
}

void SolverState::open_edge(std::uint32_t e) {
    open_[e] = 1;
    const Edge& ed = g_->edges()[e];
    adj_[ed.u].push_back({ed.v, ed.color, e});
    adj_[ed.v].push_back({ed.u, ed.color, e});
}

Color SolverState::open_color(Vertex u, Vertex v) const {
    auto k = g_->edge_index(u, v);
    if (!k || !open_[*k]) return 0;
    return g_->edges()[*k].color;
}

int SolverState::open_color_degree(Vertex v, Color c) const {
    int d = 0;
    for (auto& nb : adj_[v]) d += nb.color == c;
    return d;
}

std::size_t SolverState::reserve_remaining() const {
    std::size_t t = 0;
    for (int i = 0; i < pool_count(); ++i) t += pool_remaining(i);
    return t;
}

std::optional<Edge> SolverState::open_next(int pool) {
    if (pool < 0 || pool >= pool_count() || cursor_[pool] >= pools_[pool].size()) return std::nullopt;
    std::uint32_t e = pools_[pool][cursor_[pool]++];
    open_edge(e);
    log_.push_back(e);
    return g_->edges()[e];
}

}  // namespace hcp
