#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "engine.hpp"
#include "graph_util.hpp"
#include "hcp/oracle.hpp"
#include "hcp/randgen.hpp"

namespace hcp {

using detail::Partners;
using detail::PathSearch;

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::paper: return "paper";
        case Strategy::desk: return "desk";
        case Strategy::direct: return "direct";
        case Strategy::automatic: return "auto";
    }
    return "?";
}

Strategy parse_strategy(const std::string& s) {
    if (s == "paper") return Strategy::paper;
    if (s == "desk") return Strategy::desk;
    if (s == "direct") return Strategy::direct;
    if (s == "auto") return Strategy::automatic;
    throw InputError("unknown strategy: " + s);
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::certificate: return "certificate";
        case SolveStatus::heuristic_failure: return "heuristic_failure";
        case SolveStatus::infeasible: return "infeasible";
    }
    return "?";
}

int SolveResult::exit_code() const {
    switch (status) {
        case SolveStatus::certificate: return 0;
        case SolveStatus::heuristic_failure: return 2;
        case SolveStatus::infeasible: return 3;
    }
    return 2;
}

std::string infeasibility_reason(const ColoredGraph& g, const ProfileVector& m) {
    const int n = g.n();
    const int r = g.r();
    validate_profile(m, n, r);
    if (n < 3) return "fewer than three vertices";
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < 2) return "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v));
    auto obs = obstruction_witnesses(g, r);
    if (obs.infeasible)
        return std::to_string(obs.witnesses.size()) + " degree-r vertices with distinct colors exceed r";

    std::vector<char> active(r + 1, 0);
    int k = 0;
    for (int i = 0; i < r; ++i)
        if (m[i] > 0) active[i + 1] = 1, ++k;
    // every vertex is interior to some segment (two edges of its color) or one of the k junctions
    int junction_only = 0;
    std::vector<int> cd(r + 1);
    for (int v = 0; v < n; ++v) {
        std::fill(cd.begin(), cd.end(), 0);
        int act = 0;
        for (auto& nb : g.neighbors(v))
            if (active[nb.color]) ++cd[nb.color], ++act;
        if (act < 2) return "vertex " + std::to_string(v) + " has fewer than two edges in the profile's colors";
        bool interior = false;
        for (int c = 1; c <= r; ++c) interior |= active[c] && cd[c] >= 2;
        if (!interior) {
            if (k == 1) return "vertex " + std::to_string(v) + " has fewer than two edges of the only color";
            ++junction_only;
        }
    }
    if (junction_only > k)
        return std::to_string(junction_only) + " vertices can only be junctions but there are " + std::to_string(k);
    if (k == 1) {
        Color c = 0;
        for (int i = 1; i <= r; ++i)
            if (active[i]) c = static_cast<Color>(i);
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::vector<int> label;
        if (detail::components(detail::induced(g, all, c), label) > 1)
            return "the only color class is disconnected";
    }
    return {};
}

namespace {

struct Plan {
    std::vector<Color> order;                 // active colors, rotated
    std::vector<std::vector<Vertex>> pieces;  // one vertex list per segment
};

HamiltonCertificate make_certificate(int n, const ProfileVector& m, const Plan& plan) {
    HamiltonCertificate cert;
    std::vector<int> start(m.size(), -1);
    for (std::size_t t = 0; t < plan.pieces.size(); ++t) {
        start[plan.order[t] - 1] = static_cast<int>(cert.order.size());
        cert.order.insert(cert.order.end(), plan.pieces[t].begin(), plan.pieces[t].end());
    }
    int r = static_cast<int>(m.size());
    cert.boundaries.assign(r, 0);
    for (int i = 0; i < r; ++i)
        if (start[i] >= 0) cert.boundaries[i] = (start[i] - 1 + n) % n;
    for (int i = 0; i < r; ++i) {
        if (m[i] > 0) continue;
        int j = (i + 1) % r;
        while (m[j] == 0) j = (j + 1) % r;
        cert.boundaries[i] = cert.boundaries[j];
    }
    return cert;
}

void split_chain(const ShortChain& ch, const std::vector<int>& sizes, Plan& plan) {
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        auto b = ch.path.begin() + ch.segment_start[j];
        plan.pieces.emplace_back(b, b + sizes[j]);
    }
}

// Rotation of `active` whose leading run is exactly the colors in `lead`, if any.
std::optional<std::vector<Color>> rotate_leading(const std::vector<Color>& active, const std::vector<Color>& lead) {
    std::size_t k = active.size();
    auto in = [&](Color c) { return std::find(lead.begin(), lead.end(), c) != lead.end(); };
    for (std::size_t s = 0; s < k; ++s) {
        bool ok = true;
        for (std::size_t t = 0; t < k && ok; ++t) ok = in(active[(s + t) % k]) == (t < lead.size());
        if (ok) {
            std::vector<Color> out;
            for (std::size_t t = 0; t < k; ++t) out.push_back(active[(s + t) % k]);
            return out;
        }
    }
    return std::nullopt;
}

ColoredGraph open_graph(const SolverState& st) {
    std::vector<Edge> es;
    for (std::uint32_t e = 0; e < st.graph().edge_count(); ++e)
        if (st.is_open(e)) es.push_back(st.graph().edges()[e]);
    return ColoredGraph(st.n(), st.r(), std::move(es));
}

std::vector<Vertex> shuffled_vertices(int n, Rng& rng) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

PartitionScheme relabel(const PartitionScheme& s, const std::vector<Vertex>& perm) {
    PartitionScheme out = s;
    for (auto& blk : out.blocks) {
        for (auto& v : blk) v = perm[v];
        std::sort(blk.begin(), blk.end());
    }
    return out;
}

// Entry vertices of the first block ranked by closing candidates in the last.
std::vector<Vertex> rank_entries(const SolverState& st, const std::vector<Vertex>& first, Color c1,
                                 const std::vector<Vertex>& last, Rng& rng) {
    auto lastMask = detail::mask_of(st.n(), last);
    auto partners = st.cherries.partners(st.n(), c1);
    std::vector<std::pair<double, Vertex>> cand;
    for (Vertex x : first) {
        if (partners[x][1] != kNoVertex) continue;
        int s = 0;
        for (auto& nb : st.adj(x)) s += nb.color == c1 && lastMask[nb.vertex];
        if (s == 0) continue;
        cand.push_back({-(s + rng.unit() * 0.5), x});
    }
    std::sort(cand.begin(), cand.end());
    std::vector<Vertex> out;
    for (auto& c : cand) out.push_back(c.second);
    return out;
}

struct Context {
    const ColoredGraph& g;
    const ProfileVector& m;
    const ColorWeights& alpha;
    const SolverConfig& cfg;
    std::vector<Color> active;
};

Plan paper_theorem1(SolverState& st, const Context& cx, Rng& rng) {
    const int n = cx.g.n();
    Plan plan;
    plan.order = cx.active;
    PartitionScheme scheme;
    scheme.kind = SchemeKind::theorem1;
    scheme.n = n;
    auto perm = shuffled_vertices(n, rng);
    std::size_t next = 0;
    for (Color c : cx.active) {
        std::vector<Vertex> blk(perm.begin() + next, perm.begin() + next + cx.m[c - 1]);
        next += cx.m[c - 1];
        std::sort(blk.begin(), blk.end());
        scheme.blocks.push_back(std::move(blk));
        scheme.roles.push_back("V_" + std::to_string(c));
        scheme.color.push_back(c);
    }
    auto g1 = open_graph(st);
    auto danger = compute_danger_sets(g1, scheme, cx.m, cx.alpha, cx.cfg.beta, DangerVariant::theorem1);
    auto placed = place_cherries(g1, scheme, danger);
    st.cherries = placed.system;

    std::vector<BlockSpec> blocks;
    for (std::size_t t = 0; t < cx.active.size(); ++t) blocks.push_back({cx.active[t], placed.scheme.blocks[t]});
    auto entries = rank_entries(st, blocks.front().vertices, cx.active.front(), blocks.back().vertices, rng);
    GlueOptions opt;
    opt.rotation.end_cap = cx.cfg.end_cap;
    plan.pieces = detail::glue_impl(st, blocks, entries, kNoVertex, cx.active.front(), opt, nullptr, rng);
    return plan;
}

Plan paper_theorem2(SolverState& st, const Context& cx, Rng& rng) {
    const int n = cx.g.n();
    auto J = small_colors(n, cx.m);
    auto order = rotate_leading(cx.active, J);
    if (!order) throw StageError(Stage::stage1, "small colors are not cyclically consecutive");
    Plan plan;
    plan.order = *order;
    const int sigma = static_cast<int>(J.size());
    const int k = static_cast<int>(order->size());
    ProfileVector mr;
    for (Color c : *order) mr.push_back(cx.m[c - 1]);
    auto scheme = relabel(partition_theorem2(n, mr, sigma, *order), shuffled_vertices(n, rng));

    auto g1 = open_graph(st);
    auto danger = compute_danger_sets(g1, scheme, cx.m, cx.alpha, cx.cfg.beta, DangerVariant::theorem2);
    auto placed = place_cherries(g1, scheme, danger, order->back());
    st.cherries = placed.system;
    scheme = placed.scheme;
    std::vector<char> inCherry(n, 0);
    for (auto& q : st.cherries.cherries) inCherry[q.w1] = inCherry[q.v] = inCherry[q.w2] = 1;
    auto clean = [&](const std::vector<Vertex>& vs) {
        std::vector<Vertex> out;
        for (Vertex v : vs)
            if (!inCherry[v]) out.push_back(v);
        return out;
    };

    // large blocks V_{sigma+1..k}, to be filled up to m_i
    std::vector<BlockSpec> blocks;
    for (int i = sigma; i < k; ++i) blocks.push_back({(*order)[i], scheme.blocks[i + 1]});
    for (int i = sigma; i < k; ++i)
        if (static_cast<int>(blocks[i - sigma].vertices.size()) > mr[i])
            throw StageError(Stage::stage1, "large block exceeds its profile entry");

    std::vector<char> taken(n, 0);
    std::vector<Vertex> entries;
    Vertex closing = kNoVertex;
    std::vector<Vertex> starters;
    if (sigma > 0) {
        std::vector<ChainSpec> specs;
        for (int j = 0; j < sigma; ++j) specs.push_back({(*order)[j], mr[j], clean(scheme.blocks[j + 1])});
        detail::ChainHooks hooks;
        hooks.cap = cx.cfg.end_cap;
        hooks.start_pool = 3;
        auto chain = detail::build_chain_impl(st, specs, clean(scheme.blocks[0]), (*order)[sigma],
                                              blocks.front().vertices, rng, hooks);
        for (Vertex v : chain.path) taken[v] = 1;
        std::vector<int> sizes(mr.begin(), mr.begin() + sigma);
        split_chain(chain, sizes, plan);
        entries.push_back(chain.terminal);
        closing = chain.path.front();
        starters = chain.starters;
    }
    // leftovers of V*: starters to the last block, the rest round-robin by index
    std::vector<Vertex> left;
    for (int b = 0; b <= sigma; ++b)
        for (Vertex v : scheme.blocks[b])
            if (!taken[v]) left.push_back(v);
    std::sort(left.begin(), left.end());
    std::vector<char> placedV(n, 0);
    auto room = [&](std::size_t i) { return static_cast<int>(blocks[i].vertices.size()) < mr[sigma + i]; };
    for (Vertex s : starters)
        if (!taken[s] && room(blocks.size() - 1)) {
            blocks.back().vertices.push_back(s);
            placedV[s] = 1;
        }
    std::size_t rr = 0;
    for (Vertex v : left) {
        if (placedV[v]) continue;
        std::size_t tries = 0;
        while (!room(rr) && tries++ < blocks.size()) rr = (rr + 1) % blocks.size();
        if (!room(rr)) throw StageError(Stage::stage1, "leftover vertices exceed block capacity");
        blocks[rr].vertices.push_back(v);
        rr = (rr + 1) % blocks.size();
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<int>(blocks[i].vertices.size()) != mr[sigma + i])
            throw StageError(Stage::stage1, "block sizes do not match the profile");
        std::sort(blocks[i].vertices.begin(), blocks[i].vertices.end());
    }
    if (sigma == 0) entries = rank_entries(st, blocks.front().vertices, (*order)[0], blocks.back().vertices, rng);
    GlueOptions opt;
    opt.rotation.end_cap = cx.cfg.end_cap;
    auto paths = detail::glue_impl(st, blocks, entries, closing, (*order)[0], opt, nullptr, rng);
    for (auto& p : paths) plan.pieces.push_back(std::move(p));
    return plan;
}

// Desk pipeline: every color but the one with the largest alpha_i m_i becomes
// an exact-length chain through the free vertices, preferring vertices that
// would be weak in the final block; the final block is then repaired by
// swaps with chain vertices and solved by rotation-extension.
Plan desk(SolverState& st, const Context& cx, Rng& rng) {
    const int n = cx.g.n();
    Color L = cx.active.front();
    for (Color c : cx.active) {
        double a = cx.alpha.of(c) * cx.m[c - 1], b = cx.alpha.of(L) * cx.m[L - 1];
        if (a > b + 1e-12 || (std::abs(a - b) <= 1e-12 && cx.m[c - 1] > cx.m[L - 1])) L = c;
    }
    std::vector<Color> order;
    {
        std::size_t at = std::find(cx.active.begin(), cx.active.end(), L) - cx.active.begin();
        for (std::size_t t = 1; t <= cx.active.size(); ++t) order.push_back(cx.active[(at + t) % cx.active.size()]);
    }
    Plan plan;
    plan.order = order;
    const std::size_t k = order.size();
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);

    std::vector<char> inB(n, 1);
    Vertex entry = kNoVertex, closing = kNoVertex;
    std::vector<Vertex> chainPath;
    std::vector<int> segOf;  // segment index per chain position
    std::vector<int> degB(n, 0);
    Partners forced(n, {kNoVertex, kNoVertex});

    // weak block vertices: too few L-edges left, or an end shared by three
    // degree-2 vertices
    auto find_weak = [&]() {
        for (int v = 0; v < n; ++v) {
            degB[v] = 0;
            if (!inB[v]) continue;
            for (auto& nb : st.adj(v)) degB[v] += nb.color == L && inB[nb.vertex];
        }
        std::vector<Vertex> weak;
        for (int v = 0; v < n; ++v) {
            if (!inB[v]) continue;
            int need = static_cast<Vertex>(v) == entry ? 1 : 2;
            if (degB[v] < need) weak.push_back(static_cast<Vertex>(v));
        }
        std::fill(forced.begin(), forced.end(), std::array<Vertex, 2>{kNoVertex, kNoVertex});
        std::vector<int> load(n, 0);
        for (int v = 0; v < n; ++v) {
            if (!inB[v] || static_cast<Vertex>(v) == entry || degB[v] != 2) continue;
            for (auto& nb : st.adj(v))
                if (nb.color == L && inB[nb.vertex]) {
                    Vertex a = static_cast<Vertex>(v), b = nb.vertex;
                    if (forced[a][0] == b || forced[a][1] == b) continue;
                    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                        ++load[x];
                        if (forced[x][0] == kNoVertex) forced[x][0] = y;
                        else if (forced[x][1] == kNoVertex) forced[x][1] = y;
                    }
                }
        }
        for (int v = 0; v < n; ++v) {
            int lim = static_cast<Vertex>(v) == entry ? 1 : 2;
            if (!inB[v] || load[v] <= lim) continue;
            for (auto& nb : st.adj(v))
                if (nb.color == L && inB[nb.vertex] && degB[nb.vertex] == 2) weak.push_back(nb.vertex);
        }
        std::sort(weak.begin(), weak.end());
        weak.erase(std::unique(weak.begin(), weak.end()), weak.end());
        return weak;
    };

    std::vector<Vertex> weak;
    if (k > 1) {
        std::vector<ChainSpec> specs;
        for (std::size_t t = 0; t + 1 < k; ++t) specs.push_back({order[t], cx.m[order[t] - 1], all});
        for (std::size_t j = 0; j < specs.size(); ++j)
            for (int t = 0; t < specs[j].size; ++t) segOf.push_back(static_cast<int>(j));
        detail::ChainHooks hooks;
        hooks.cap = cx.cfg.end_cap;
        hooks.absorb.resize(specs.size());
        // padding prefers vertices whose removal leaves no L-neighbour short of edges
        hooks.key = [&st, L](const PathSearch& ps, Vertex u) {
            auto avail = [&](Vertex v) { return ps.in_region(v) && !ps.used(v); };
            int harm = 0, freeL = 0;
            for (auto& nb : st.adj(u)) {
                if (nb.color != L || !avail(nb.vertex)) continue;
                ++freeL;
                int d = 0;
                for (auto& nb2 : st.adj(nb.vertex)) d += nb2.color == L && avail(nb2.vertex);
                harm += d <= 3;
            }
            return harm * 1000.0 + std::min(freeL, 4) * 10.0 + ps.free_degree(u);
        };
        std::vector<char> wanted(n, 0);
        auto want = [&](Vertex w) {
            if (wanted[w]) return;
            std::size_t best = specs.size();
            int bd = 1;
            for (std::size_t t = 0; t < specs.size(); ++t) {
                int d = st.open_color_degree(w, specs[t].color);
                if (d > bd) bd = d, best = t;
            }
            if (best == specs.size()) return;
            wanted[w] = 1;
            hooks.absorb[best].push_back(w);
        };
        for (int v = 0; v < n; ++v)
            if (st.open_color_degree(static_cast<Vertex>(v), L) <= 2) want(static_cast<Vertex>(v));
        std::optional<StageError> err;
        for (int round = 0; round < 4; ++round) {
            std::fill(inB.begin(), inB.end(), 1);
            ShortChain chain;
            try {
                chain = detail::build_chain_impl(st, specs, all, L, all, rng, hooks);
            } catch (const StageError& e) {
                err = e;
                chainPath.clear();
                continue;
            }
            err.reset();
            chainPath = chain.path;
            for (Vertex v : chainPath) inB[v] = 0;
            entry = chain.terminal;
            closing = chainPath.front();
            weak = find_weak();
            if (weak.empty()) break;
            for (Vertex w : weak) want(w);
        }
        if (chainPath.empty()) throw err ? *err : StageError(Stage::stage3, "no chain");
    } else {
        weak = find_weak();
        if (!weak.empty()) throw StageError(Stage::stage1, "final block keeps weak vertices");
    }

    std::vector<int> posC(n, -1);
    for (std::size_t i = 0; i < chainPath.size(); ++i) posC[chainPath[i]] = static_cast<int>(i);
    auto colIn = [&](std::size_t i) { return order[segOf[i]]; };
    auto colOut = [&](std::size_t i) { return i + 1 < chainPath.size() ? order[segOf[i + 1]] : L; };
    auto nextOf = [&](std::size_t i) { return i + 1 < chainPath.size() ? chainPath[i + 1] : entry; };

    // swap weak block vertex w with the chain vertex at some position i
    auto try_swap = [&](Vertex w) {
        std::size_t bestI = 0;
        int bestD = -1;
        for (auto& nb : st.adj(w)) {
            int pa = posC[nb.vertex];
            if (pa < 0) continue;
            for (int d : {1, -1}) {
                long zi = pa + d;
                if (zi < 1 || zi >= static_cast<long>(chainPath.size())) continue;
                std::size_t i = static_cast<std::size_t>(zi);
                Vertex prev = chainPath[i - 1], nxt = nextOf(i);
                if (nxt == w) continue;
                if (st.open_color(w, prev) != colIn(i) || st.open_color(w, nxt) != colOut(i)) continue;
                Vertex z = chainPath[i];
                int dz = 0;
                for (auto& nb2 : st.adj(z)) dz += nb2.color == L && inB[nb2.vertex] && nb2.vertex != w;
                if (dz > bestD) {
                    bestD = dz;
                    bestI = i;
                }
            }
        }
        if (bestD < 2) return false;
        Vertex z = chainPath[bestI];
        chainPath[bestI] = w;
        posC[w] = static_cast<int>(bestI);
        posC[z] = -1;
        inB[w] = 0;
        inB[z] = 1;
        return true;
    };

    for (int round = 0; !weak.empty(); ++round) {
        if (round > n) throw StageError(Stage::stage1, "final block keeps weak vertices");
        bool any = false;
        for (Vertex w : weak)
            if (inB[w] && try_swap(w)) any = true;
        if (!any) throw StageError(Stage::stage1, "no chain swap repairs the final block");
        weak = find_weak();
    }

    std::vector<Vertex> B;
    for (int v = 0; v < n; ++v)
        if (inB[v]) B.push_back(static_cast<Vertex>(v));
    std::vector<Vertex> entries;
    if (k == 1) {
        std::vector<std::pair<double, Vertex>> cand;
        for (Vertex v : B)
            if (forced[v][1] == kNoVertex) cand.push_back({-(degB[v] + rng.unit()), v});
        std::sort(cand.begin(), cand.end());
        for (auto& c : cand) entries.push_back(c.second);
    } else {
        entries.push_back(entry);
        std::size_t at = 0;
        for (std::size_t t = 0; t + 1 < k; ++t) {
            plan.pieces.emplace_back(chainPath.begin() + at, chainPath.begin() + at + cx.m[order[t] - 1]);
            at += cx.m[order[t] - 1];
        }
    }
    GlueOptions opt;
    opt.rotation.end_cap = cx.cfg.end_cap;
    auto paths = detail::glue_impl(st, {BlockSpec{L, B}}, entries, closing, order.front(), opt, &forced, rng);
    plan.pieces.push_back(std::move(paths.front()));
    return plan;
}

int stage_slot(Stage s) {
    switch (s) {
        case Stage::stage1: return 0;
        case Stage::stage2: return 1;
        case Stage::stage3: return 2;
        case Stage::glue: return 3;
        default: return 4;
    }
}

}  // namespace

SolveResult solve(const ColoredGraph& g, const ProfileVector& m, const ColorWeights& alpha,
                  const SolverConfig& cfg) {
    const int n = g.n();
    const int r = g.r();
    validate_profile(m, n, r);
    if (alpha.r() != r) throw InputError("alpha has the wrong number of colors");
    if (cfg.restarts < 0) throw InputError("restarts must be >= 0");

    SolveResult res;
    res.pipeline = in_M_beta(m, n, cfg.beta) ? "theorem1" : "theorem2";
    if (auto why = infeasibility_reason(g, m); !why.empty()) {
        res.status = SolveStatus::infeasible;
        res.failure_stage = Stage::infeasible;
        res.reason = why;
        return res;
    }

    Context cx{g, m, alpha, cfg, {}};
    for (int i = 0; i < r; ++i)
        if (m[i] > 0) cx.active.push_back(static_cast<Color>(i + 1));

    std::vector<double> split{1.0};
    if (cfg.use_layers && n >= 3) {
        double phat = g.edge_count() / (0.5 * n * (n - 1.0));
        double omega = cfg.omega >= 0 ? cfg.omega : default_omega(n);
        try {
            split = res.pipeline == "theorem1" ? theorem1_layers(n, r, phat, omega)
                                               : theorem2_layers(n, alpha.min(), phat, omega);
        } catch (const InfeasibleSplit&) {
            split = {phat};
        }
    }

    auto finish = [&](Plan plan, const char* method, const SolverState& st) {
        auto cert = make_certificate(n, m, plan);
        auto rep = verify_certificate(g, m, cert);
        res.reserve_opened += st.opened_log().size();
        if (!rep.ok) {
            res.stage_failures[4]++;
            res.reason = "internal: " + rep.message;
            return false;
        }
        res.status = SolveStatus::certificate;
        res.failure_stage = Stage::none;
        res.certificate = std::move(cert);
        res.method = method;
        return true;
    };

    for (int a = 0; a < std::max(1, cfg.restarts); ++a) {
        res.attempts = a + 1;
        std::uint64_t seed = derive(cfg.seed, static_cast<std::uint64_t>(a), 21);
        std::vector<std::uint8_t> tags;
        if (a == 0 && !cfg.layers.empty()) tags = cfg.layers;
        else if (cfg.use_layers && split.size() > 1) tags = tag_layers(g, split, derive(seed, 1, 22));
        else tags.assign(g.edge_count(), 1);

        for (int pass = 0; pass < 2; ++pass) {
            bool paper = pass == 0;
            if (cfg.strategy == Strategy::direct) break;
            if (paper && cfg.strategy == Strategy::desk) continue;
            if (!paper && cfg.strategy == Strategy::paper) continue;
            // the desk pipeline does not stage its edges: everything is open
            SolverState st(g, paper ? tags : std::vector<std::uint8_t>(g.edge_count(), 1), derive(seed, 2 + pass, 23));
            st.path_hook = cfg.path_hook;
            Rng rng(derive(seed, 4 + pass, 24));
            try {
                Plan plan = paper ? (res.pipeline == "theorem1" ? paper_theorem1(st, cx, rng)
                                                                : paper_theorem2(st, cx, rng))
                                  : desk(st, cx, rng);
                if (finish(std::move(plan), paper ? "paper" : "desk", st)) return res;
                res.failure_stage = Stage::glue;
            } catch (const StageError& e) {
                res.stage_failures[stage_slot(e.stage)]++;
                res.failure_stage = e.stage;
                res.reason = std::string(paper ? "paper: " : "desk: ") + e.what();
                res.reserve_opened += st.opened_log().size();
            }
        }

        if (cfg.strategy == Strategy::direct || (cfg.strategy == Strategy::automatic && n <= cfg.direct_limit)) {
            Rng rng(derive(seed, 6, 24));
            std::vector<Color> word;
            for (int i = 0; i < r; ++i) word.insert(word.end(), static_cast<std::size_t>(m[i]), static_cast<Color>(i + 1));
            int shift = static_cast<int>(rng.below(n));
            std::rotate(word.begin(), word.begin() + shift, word.end());
            if (auto order = detail::word_cycle(g, word, rng, std::max(1, cfg.direct_tries),
                                                detail::default_cap(n, cfg.end_cap))) {
                auto cert = certificate_from_cycle(std::move(*order), m, (n - shift) % n);
                if (verify_certificate(g, m, cert).ok) {
                    res.status = SolveStatus::certificate;
                    res.failure_stage = Stage::none;
                    res.certificate = std::move(cert);
                    res.method = "direct";
                    return res;
                }
                res.stage_failures[4]++;
                res.reason = "internal: direct cycle failed verification";
            } else {
                res.stage_failures[1]++;
                res.failure_stage = Stage::stage2;
                res.reason = "direct: rotation-extension along the color word stalled";
            }
        }
    }

    if (cfg.exact_fallback && n <= cfg.exact_limit) {
        OracleOptions opt;
        opt.limit = cfg.exact_limit;
        opt.override_limit = true;
        if (auto cert = exact_certificate(g, m, opt)) {
            res.status = SolveStatus::certificate;
            res.failure_stage = Stage::none;
            res.certificate = std::move(*cert);
            res.method = "exact";
            return res;
        }
        res.status = SolveStatus::infeasible;
        res.failure_stage = Stage::infeasible;
        res.reason = "exhaustive search found no certificate";
        return res;
    }
    res.status = SolveStatus::heuristic_failure;
    return res;
}

ColoredGraph project_digraph(const ColoredDigraph& d) {
    std::vector<Edge> es;
    for (auto& a : d.arcs())
        if (!d.has_arc(a.to, a.from)) es.push_back({std::min(a.from, a.to), std::max(a.from, a.to), a.color});
    return ColoredGraph(d.n(), d.r(), std::move(es));
}

namespace {

std::optional<HamiltonCertificate> fit_directed(const ColoredDigraph& d, const ProfileVector& m,
                                                const std::vector<Vertex>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<Color> word(n);
    for (int k = 0; k < n; ++k) {
        word[k] = d.color_of(order[k], order[(k + 1) % n]);
        if (!word[k]) return std::nullopt;
    }
    std::vector<Color> pattern;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int t = 0; t < m[i]; ++t) pattern.push_back(static_cast<Color>(i + 1));
    for (int s = 0; s < n; ++s) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) ok = word[(s + k) % n] == pattern[k];
        if (ok) return certificate_from_cycle(order, m, s);
    }
    return std::nullopt;
}

}  // namespace

SolveResult solve_digraph(const ColoredDigraph& d, const ProfileVector& m, const ColorWeights& alpha,
                          const SolverConfig& config) {
    auto g = project_digraph(d);
    auto res = solve(g, m, alpha, config);
    if (res.status == SolveStatus::infeasible) {
        // infeasible projection says nothing about the digraph itself
        res.status = SolveStatus::heuristic_failure;
        res.reason = "projection: " + res.reason;
        return res;
    }
    if (res.status != SolveStatus::certificate) return res;
    auto order = res.certificate->order;
    for (int dir = 0; dir < 2; ++dir) {
        if (auto cert = fit_directed(d, m, order)) {
            if (verify_directed_certificate(d, m, *cert).ok) {
                res.certificate = std::move(cert);
                return res;
            }
        }
        std::reverse(order.begin(), order.end());
    }
    res.status = SolveStatus::heuristic_failure;
    res.failure_stage = Stage::glue;
    res.reason = "projected cycle does not follow the arc orientations";
    res.certificate.reset();
    return res;
}

}  // namespace hcp
