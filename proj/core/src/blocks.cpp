#include <algorithm>
#include <cmath>

#include "engine.hpp"
#include "graph_util.hpp"
#include "path_search.hpp"

namespace hcp {

using detail::PathSearch;

namespace detail {

Partners merged_partners(const SolverState& st, Color c, const Partners* extra) {
    Partners p = st.cherries.partners(st.n(), c);
    if (extra) {
        for (int v = 0; v < st.n(); ++v)
            for (Vertex q : (*extra)[v]) {
                if (q == kNoVertex || p[v][0] == q || p[v][1] == q) continue;
                if (p[v][0] == kNoVertex) p[v][0] = q;
                else if (p[v][1] == kNoVertex) p[v][1] = q;
                else throw StageError(Stage::stage1, "vertex " + std::to_string(v) + " carries three forced edges");
            }
    }
    return p;
}

bool hamilton_with_boosters(SolverState& st, PathSearch& ps, std::size_t target, Rng& rng, std::size_t cap,
                            const std::vector<int>& pools) {
    std::vector<char> mark(st.n(), 0);
    for (;;) {
        if (ps.grow(target, ps.warnsdorff(), rng, cap)) return true;
        std::fill(mark.begin(), mark.end(), 0);
        for (Vertex e : ps.last_ends()) mark[e] = 1;
        bool progress = false;
        for (int pool : pools) {
            while (!progress) {
                auto e = st.open_next(pool);
                if (!e) break;
                if (ps.color() && e->color != ps.color()) continue;
                if (!ps.in_region(e->u) || !ps.in_region(e->v)) continue;
                bool touchU = mark[e->u] || !ps.used(e->u);
                bool touchV = mark[e->v] || !ps.used(e->v);
                progress = touchU || touchV;
            }
            if (progress) break;
        }
        if (!progress) return false;
    }
}

}  // namespace detail

RotationOutcome restricted_rotation_extension(const SolverState& st, Color c, const std::vector<Vertex>& block,
                                              std::optional<Vertex> fixed_end, const RotationOptions& opt) {
    RotationOutcome out;
    if (block.empty()) throw InputError("empty block");
    auto lg = detail::induced(st.graph(), block, c);
    // keep only open edges
    {
        std::vector<int> label;
        detail::LocalGraph open;
        open.global = lg.global;
        open.adj.resize(lg.size());
        for (std::size_t x = 0; x < lg.size(); ++x)
            for (auto y : lg.adj[x])
                if (st.open_color(lg.global[x], lg.global[y]) == c) open.adj[x].push_back(y);
        if (detail::components(open, label) > 1)
            throw StageError(Stage::stage2, "color class is disconnected on the block");
    }
    auto partners = st.cherries.partners(st.n(), c);
    PathSearch ps(st, c, detail::mask_of(st.n(), block), &partners);
    Vertex start;
    if (fixed_end) {
        start = *fixed_end;
    } else {
        start = block.front();
        int best = -1;
        for (Vertex v : block) {
            if (ps.forced_count(v) > 1) continue;
            int d = ps.region_degree(v);
            if (best < 0 || d < best) {
                best = d;
                start = v;
            }
        }
    }
    if (!ps.in_region(start)) throw InputError("fixed endpoint outside the block");
    ps.reset(start);
    Rng rng(opt.seed);
    std::size_t cap = detail::default_cap(st.n(), opt.end_cap);
    out.hamiltonian = ps.grow(block.size(), ps.warnsdorff(), rng, cap);
    out.path = ps.path();
    if (!out.hamiltonian) ps.end_family(cap, out.end_set, out.end_paths);
    return out;
}

std::vector<Vertex> extend_with_boosters(SolverState& st, Color c, const std::vector<Vertex>& block,
                                         std::optional<Vertex> fixed_end, int pool, const RotationOptions& opt) {
    if (block.empty()) throw InputError("empty block");
    auto partners = st.cherries.partners(st.n(), c);
    PathSearch ps(st, c, detail::mask_of(st.n(), block), &partners);
    Vertex start = fixed_end ? *fixed_end : block.front();
    if (!ps.in_region(start)) throw InputError("fixed endpoint outside the block");
    ps.reset(start);
    Rng rng(opt.seed);
    if (!detail::hamilton_with_boosters(st, ps, block.size(), rng, detail::default_cap(st.n(), opt.end_cap), {pool}))
        throw StageError(Stage::stage2, "reserve pool exhausted before the path became Hamiltonian");
    return ps.path();
}

std::optional<std::vector<Vertex>> long_path_in_expander(const ColoredGraph& g, Color c,
                                                         const std::vector<Vertex>& region, Vertex start, int L,
                                                         std::uint64_t seed) {
    if (L < 0) throw InputError("negative path length");
    auto mask = detail::mask_of(g.n(), region);
    if (start >= static_cast<Vertex>(g.n()) || !mask[start]) throw InputError("start outside the region");
    if (static_cast<std::size_t>(L) + 1 > region.size()) return std::nullopt;
    SolverState st(g);
    PathSearch ps(st, c, std::move(mask));
    ps.reset(start);
    Rng rng(seed);
    if (!ps.grow(static_cast<std::size_t>(L) + 1, ps.warnsdorff(), rng, detail::default_cap(g.n(), 0)))
        return std::nullopt;
    auto p = ps.path();
    p.resize(static_cast<std::size_t>(L) + 1);
    return p;
}

namespace detail {

std::vector<std::vector<Vertex>> glue_impl(SolverState& st, const std::vector<BlockSpec>& blocks,
                                           const std::vector<Vertex>& entries, Vertex closing_vertex,
                                           Color closing_color, const GlueOptions& opt, const Partners* extra,
                                           Rng& rng) {
    if (blocks.empty()) throw InputError("no blocks to glue");
    const int n = st.n();
    std::size_t cap = default_cap(n, opt.rotation.end_cap);
    int budget = opt.junction_budget;
    if (budget <= 0) {
        double L = std::log(std::max(3, n));
        budget = static_cast<int>(std::ceil(L * L));
    }
    std::vector<Partners> partners;
    std::vector<std::vector<char>> masks;
    for (auto& b : blocks) {
        partners.push_back(merged_partners(st, b.color, extra));
        masks.push_back(mask_of(n, b.vertices));
    }

    std::optional<StageError> last;
    int tries = 0;
    for (Vertex entry : entries) {
        if (tries++ >= std::max(1, opt.entry_tries)) break;
        Vertex close = closing_vertex == kNoVertex ? entry : closing_vertex;
        std::vector<std::vector<Vertex>> out;
        Vertex x = entry;
        try {
            for (std::size_t t = 0; t < blocks.size(); ++t) {
                const auto& blk = blocks[t];
                if (!masks[t][x]) throw StageError(Stage::glue, "junction vertex outside its block");
                PathSearch ps(st, blk.color, masks[t], &partners[t]);
                if (ps.forced_count(x) > 1) throw StageError(Stage::glue, "block entry is a cherry center");
                ps.reset(x);
                std::vector<int> pools{static_cast<int>(blk.color)};
                for (int p = 0; p < st.pool_count(); ++p)
                    if (p != blk.color) pools.push_back(p);
                if (!hamilton_with_boosters(st, ps, blk.vertices.size(), rng, cap, pools))
                    throw StageError(Stage::stage2, "no Hamilton path in block of color " + std::to_string(blk.color));

                bool lastBlock = t + 1 == blocks.size();
                Color jc = lastBlock ? closing_color : blocks[t + 1].color;
                auto okNext = [&](Vertex y) {
                    if (lastBlock) return y == close;
                    if (!masks[t + 1][y]) return false;
                    auto& pp = partners[t + 1][y];
                    return (pp[0] != kNoVertex) + (pp[1] != kNoVertex) <= 1;
                };
                auto pred = [&](Vertex e) {
                    for (auto& nb : st.adj(e))
                        if (nb.color == jc && okNext(nb.vertex)) return true;
                    return false;
                };
                bool found = pred(ps.end()) || ps.rotate_to(pred, cap);
                for (int k = 0; !found && k < budget; ++k) {
                    auto e = st.open_next(0);
                    if (!e) break;
                    if (e->color != jc && e->color != blk.color) continue;
                    found = ps.rotate_to(pred, cap);
                }
                if (!found) throw StageError(Stage::glue, "no junction edge of color " + std::to_string(jc));
                out.push_back(ps.path());
                if (!lastBlock) {
                    Vertex e = ps.end();
                    Vertex best = kNoVertex;
                    int bd = -1;
                    for (auto& nb : st.adj(e)) {
                        if (nb.color != jc || !okNext(nb.vertex)) continue;
                        int d = 0;
                        for (auto& nb2 : st.adj(nb.vertex))
                            d += nb2.color == blocks[t + 1].color && masks[t + 1][nb2.vertex];
                        if (d > bd) {
                            bd = d;
                            best = nb.vertex;
                        }
                    }
                    x = best;
                }
            }
            return out;
        } catch (const StageError& e) {
            last = e;
        }
    }
    if (last) throw *last;
    throw StageError(Stage::glue, "no entry vertex");
}

}  // namespace detail

std::vector<std::vector<Vertex>> glue_hamilton_paths(SolverState& st, const std::vector<BlockSpec>& blocks,
                                                     const std::vector<Vertex>& entries, Vertex closing_vertex,
                                                     Color closing_color, const GlueOptions& opt) {
    Rng rng(opt.rotation.seed);
    return detail::glue_impl(st, blocks, entries, closing_vertex, closing_color, opt, nullptr, rng);
}

}  // namespace hcp
