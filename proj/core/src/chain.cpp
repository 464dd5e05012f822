#include <algorithm>
#include <deque>

#include "engine.hpp"

namespace hcp {

namespace detail {

namespace {

// Appends a shortest color-c detour from the end of ps through w. Returns false
// (leaving ps untouched) when w cannot be reached with room left.
bool absorb_one(const SolverState& st, PathSearch& ps, Vertex w, std::size_t limit, const std::vector<char>& avoid) {
    const int n = st.n();
    if (ps.used(w) || !ps.in_region(w)) return false;
    std::vector<int> wn;
    for (auto& nb : st.adj(w))
        if (nb.color == ps.color() && ps.in_region(nb.vertex) && !ps.used(nb.vertex) && !avoid[nb.vertex])
            wn.push_back(static_cast<int>(nb.vertex));
    bool endAdj = st.open_color(ps.end(), w) == ps.color();
    if (wn.empty() || (!endAdj && wn.size() < 2)) return false;
    std::vector<int> prev(n, -2);
    std::deque<Vertex> q;
    Vertex src = ps.end();
    prev[src] = -1;
    q.push_back(src);
    Vertex hit = kNoVertex;
    std::vector<char> isWn(n, 0);
    for (int a : wn) isWn[a] = 1;
    if (endAdj) hit = src;
    while (!q.empty() && hit == kNoVertex) {
        Vertex x = q.front();
        q.pop_front();
        for (auto& nb : st.adj(x)) {
            Vertex y = nb.vertex;
            if (nb.color != ps.color() || prev[y] != -2 || !ps.in_region(y) || ps.used(y) || y == w || avoid[y])
                continue;
            prev[y] = static_cast<int>(x);
            // keep a second neighbour of w free for leaving it
            if (isWn[y] && wn.size() >= 2) {
                hit = y;
                break;
            }
            q.push_back(y);
        }
    }
    if (hit == kNoVertex) return false;
    std::vector<Vertex> seg;
    for (Vertex y = hit; y != src; y = static_cast<Vertex>(prev[y])) seg.push_back(y);
    std::reverse(seg.begin(), seg.end());
    if (ps.size() + seg.size() + 1 > limit) return false;
    for (Vertex y : seg) ps.append(y);
    ps.append(w);
    return true;
}

}  // namespace

ShortChain build_chain_impl(const SolverState& st, const std::vector<ChainSpec>& chain,
                            const std::vector<Vertex>& starter_region, Color next_color,
                            const std::vector<Vertex>& next_region, Rng& rng, const ChainHooks& hooks) {
    const int n = st.n();
    if (chain.empty()) throw InputError("empty chain");
    for (auto& s : chain)
        if (s.size < 1) throw InputError("chain segments need m_j >= 1");
    std::size_t cap = default_cap(n, hooks.cap);

    std::vector<char> used(n, 0), blocked(n, 0);
    auto starterMask = mask_of(n, starter_region);
    auto nextMask = mask_of(n, next_region);
    std::vector<std::vector<char>> regions;
    for (auto& s : chain) regions.push_back(mask_of(n, s.region));

    const Color c1 = chain[0].color;
    auto starters_of = [&](Vertex x) {
        int cnt = 0;
        for (auto& nb : st.adj(x)) cnt += nb.color == c1 && starterMask[nb.vertex] && nb.vertex != x;
        return cnt;
    };

    // first vertex: many c_1-neighbours in the starter region
    std::vector<std::pair<double, Vertex>> cand;
    for (Vertex x : chain[0].region) {
        int s = starters_of(x);
        if (s == 0) continue;
        if (chain[0].size > 1) {
            bool cont = false;
            for (auto& nb : st.adj(x))
                if (nb.color == c1 && regions[0][nb.vertex] && nb.vertex != x) cont = true;
            if (!cont) continue;
        }
        double score = s + (hooks.start_bonus ? hooks.start_bonus(x) : 0.0);
        cand.push_back({-score, x});
    }
    if (cand.empty()) throw StageError(Stage::stage3, "no chain start with a starter neighbour");
    std::sort(cand.begin(), cand.end());
    std::size_t pick = rng.below(std::min<std::size_t>(cand.size(), std::max(1, hooks.start_pool)));
    Vertex x = cand[pick].second;

    ShortChain out;
    for (auto& nb : st.adj(x))
        if (nb.color == c1 && starterMask[nb.vertex]) out.starters.push_back(nb.vertex);
    std::sort(out.starters.begin(), out.starters.end());
    // keep one continuation for P_1 when the regions overlap
    if (chain[0].size > 1) {
        bool free = false;
        for (auto& nb : st.adj(x))
            if (nb.color == c1 && regions[0][nb.vertex] && !starterMask[nb.vertex]) free = true;
        if (!free) {
            Vertex keep = kNoVertex;
            int best = -1;
            for (Vertex s : out.starters) {
                if (!regions[0][s]) continue;
                int d = st.open_color_degree(s, c1);
                if (d > best) {
                    best = d;
                    keep = s;
                }
            }
            out.starters.erase(std::remove(out.starters.begin(), out.starters.end(), keep), out.starters.end());
        }
    }
    if (out.starters.empty()) throw StageError(Stage::stage3, "no starter left for the closing edge");
    for (Vertex s : out.starters) blocked[s] = 1;

    for (std::size_t j = 0; j < chain.size(); ++j) {
        const auto& spec = chain[j];
        std::vector<char> mask(n, 0);
        for (Vertex v : spec.region)
            if (!used[v] && !blocked[v]) mask[v] = 1;
        mask[x] = 1;
        PathSearch ps(st, spec.color, mask);
        bool lastSeg = j + 1 == chain.size();
        Color jc = lastSeg ? next_color : chain[j + 1].color;
        const std::vector<char>& nmask = lastSeg ? nextMask : regions[j + 1];
        auto okNext = [&](Vertex y) { return nmask[y] && !used[y] && !blocked[y] && !ps.used(y); };
        auto pred = [&](Vertex e) {
            for (auto& nb : st.adj(e))
                if (nb.color == jc && okNext(nb.vertex)) return true;
            return false;
        };
        std::function<double(Vertex)> key;
        if (hooks.key) key = [&](Vertex u) { return hooks.key(ps, u); };
        else key = ps.warnsdorff();

        ps.reset(x);
        if (j < hooks.absorb.size()) {
            // leave room for the tail of the segment
            std::size_t limit = static_cast<std::size_t>(spec.size);
            for (Vertex w : hooks.absorb[j]) {
                if (blocked[w] || used[w]) continue;
                absorb_one(st, ps, w, limit, blocked);
            }
        }
        const std::size_t prefix = ps.size();
        bool done = false;
        for (int attempt = 0; attempt < 4 && !done; ++attempt) {
            if (attempt > 0) {
                // back off a little and regrow with fresh tie-breaks
                std::size_t keep = ps.size() > prefix ? prefix + rng.below(ps.size() - prefix) : prefix;
                ps.truncate(keep);
            }
            if (!ps.grow(static_cast<std::size_t>(spec.size), key, rng, cap)) continue;
            done = pred(ps.end()) || ps.rotate_to(pred, cap);
        }
        if (!done)
            throw StageError(Stage::stage3, "chain segment of color " + std::to_string(spec.color) +
                                                " could not reach its length with a junction end");
        out.segment_start.push_back(static_cast<int>(out.path.size()));
        for (Vertex v : ps.path()) {
            used[v] = 1;
            out.path.push_back(v);
        }
        Vertex e = ps.end();
        Vertex best = kNoVertex;
        double bd = -1;
        for (auto& nb : st.adj(e)) {
            if (nb.color != jc || !okNext(nb.vertex)) continue;
            Color follow = lastSeg ? next_color : chain[j + 1].color;
            double d = 0;
            for (auto& nb2 : st.adj(nb.vertex)) d += nb2.color == follow && nmask[nb2.vertex] && !used[nb2.vertex];
            if (d > bd) {
                bd = d;
                best = nb.vertex;
            }
        }
        x = best;
    }
    out.terminal = x;
    return out;
}

}  // namespace detail

ShortChain build_short_chain(const SolverState& st, const std::vector<ChainSpec>& chain,
                             const std::vector<Vertex>& starter_region, Color next_color,
                             const std::vector<Vertex>& next_region, std::uint64_t seed) {
    Rng rng(seed);
    detail::ChainHooks hooks;
    hooks.start_pool = 1;
    return detail::build_chain_impl(st, chain, starter_region, next_color, next_region, rng, hooks);
}

}  // namespace hcp
