#include "hcp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "graph_util.hpp"
#include "hcp/rng.hpp"

namespace hcp {

using nlohmann::json;
using detail::Bfs;
using detail::LocalGraph;

const Constants& Constants::paper() {
    static const Constants k{};
    return k;
}

json Constants::to_json() const {
    return json{{"small_div", small_div},         {"b1_exp_div", b1_exp_div},
                {"b3_factor", b3_factor},         {"b3_radius", b3_radius},
                {"am_div", am_div},               {"b_factor_t1", b_factor_t1},
                {"b_factor_t2", b_factor_t2},     {"am_count_factor", am_count_factor},
                {"am_local_factor", am_local_factor}, {"am_local_radius", am_local_radius},
                {"astar_div", astar_div},         {"exp_a_size_div", exp_a_size_div},
                {"exp_a_div", exp_a_div},         {"exp_b_size_div", exp_b_size_div},
                {"exp_b_factor", exp_b_factor}};
}

json CheckReport::to_json() const {
    json j{{"check", check}, {"params", params}, {"pass", pass}};
    if (vacuous) j["vacuous"] = true;
    if (witness) j["witness"] = *witness;
    return j;
}

double PartitionScheme::mu_min() const {
    double m = 1.0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (!blocks[b].empty()) m = std::min(m, mu(b));
    return m;
}

std::vector<int> PartitionScheme::block_of() const {
    std::vector<int> out(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (Vertex v : blocks[b]) out[v] = static_cast<int>(b);
    return out;
}

void PartitionScheme::validate() const {
    std::vector<char> seen(n, 0);
    std::size_t total = 0;
    for (auto& blk : blocks) {
        for (Vertex v : blk) {
            if (v >= static_cast<Vertex>(n)) throw InputError("block vertex out of range");
            if (seen[v]) throw InputError("blocks overlap at vertex " + std::to_string(v));
            seen[v] = 1;
        }
        total += blk.size();
    }
    if (total != static_cast<std::size_t>(n)) throw InputError("blocks do not cover the ground set");
    if (color.size() != blocks.size() || roles.size() != blocks.size())
        throw InputError("scheme tags do not match block count");
}

int PartitionScheme::block_for_color(Color c) const {
    for (std::size_t b = 0; b < color.size(); ++b)
        if (color[b] == c) return static_cast<int>(b);
    return -1;
}

double density_constant(const ColoredGraph& g) {
    int n = g.n();
    if (n < 3) return 0;
    double p = static_cast<double>(g.edge_count()) / (0.5 * n * (n - 1.0));
    return p * n / std::log(static_cast<double>(n));
}

SmallSetResult small_set(const ColoredGraph& g, const std::vector<Vertex>& S, double c,
                         const Constants& k) {
    int n = g.n();
    SmallSetResult res;
    double logn = std::log(std::max(2, n));
    res.threshold = c * S.size() * logn / (k.small_div * n);
    res.bound = std::pow(static_cast<double>(n), 1.0 - c * S.size() / (k.b1_exp_div * n));
    std::vector<char> inS(n, 0);
    for (Vertex v : S) inS[v] = 1;
    for (int v = 0; v < n; ++v) {
        int d = 0;
        for (auto& nb : g.neighbors(v)) d += inS[nb.vertex];
        if (d <= res.threshold) res.members.push_back(static_cast<Vertex>(v));
    }
    res.within_bound = res.members.size() <= res.bound;
    return res;
}

CheckReport check_small_pairs(const ColoredGraph& g, double c, const Constants& k) {
    CheckReport rep;
    rep.check = "B2_small_pairs";
    std::vector<Vertex> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    auto small = small_set(g, all, c, k);
    rep.params = {{"c", c}, {"threshold", small.threshold}, {"small", small.members.size()}};
    std::vector<char> isSmall(g.n(), 0);
    for (Vertex v : small.members) isSmall[v] = 1;
    Bfs bfs(g.n());
    for (Vertex v : small.members) {
        std::optional<std::pair<Vertex, int>> hit;
        bfs.run(
            v, 2,
            [&](std::uint32_t x, auto&& push) {
                for (auto& nb : g.neighbors(x)) push(nb.vertex);
            },
            [&](std::uint32_t x, int d) {
                if (x != v && isSmall[x]) {
                    hit = {x, d};
                    return false;
                }
                return true;
            });
        if (hit) {
            rep.pass = false;
            rep.witness = json{{"u", v}, {"v", hit->first}, {"distance", hit->second}};
            break;
        }
    }
    return rep;
}

CheckReport check_local_small_density(const ColoredGraph& g, const std::vector<Vertex>& S, double c,
                                      int r, std::optional<double> bound, const Constants& k) {
    CheckReport rep;
    rep.check = "B3_local_small_density";
    int n = g.n();
    auto small = small_set(g, S, c, k);
    double lim = bound ? *bound : (S.empty() || c <= 0 ? INFINITY : k.b3_factor * r * n / (c * S.size()));
    rep.params = {{"c", c}, {"S", S.size()}, {"radius", k.b3_radius}, {"bound", lim},
                  {"small", small.members.size()}};
    if (small.members.size() <= lim) return rep;
    std::vector<char> isSmall(n, 0);
    for (Vertex v : small.members) isSmall[v] = 1;
    Bfs bfs(n);
    for (int v = 0; v < n; ++v) {
        double cnt = 0;
        bfs.run(
            v, k.b3_radius,
            [&](std::uint32_t x, auto&& push) {
                for (auto& nb : g.neighbors(x)) push(nb.vertex);
            },
            [&](std::uint32_t x, int) {
                cnt += isSmall[x];
                return cnt <= lim;
            });
        if (cnt > lim) {
            rep.pass = false;
            rep.witness = json{{"vertex", v}, {"count_at_least", cnt}};
            break;
        }
    }
    return rep;
}

int min_degree(const ColoredGraph& g) {
    if (g.n() == 0) return 0;
    int d = g.degree(0);
    for (int v = 1; v < g.n(); ++v) d = std::min(d, g.degree(v));
    return d;
}

CheckReport check_min_degree(const ColoredGraph& g, int r) {
    CheckReport rep;
    rep.check = "B4_min_degree";
    int md = min_degree(g);
    rep.params = {{"r", r}, {"min_degree", md}};
    if (md < r + 1) {
        rep.pass = false;
        for (int v = 0; v < g.n(); ++v)
            if (g.degree(v) == md) {
                rep.witness = json{{"vertex", v}, {"degree", md}};
                break;
            }
    }
    return rep;
}

double b5_set_size(int n) {
    if (n < 3) return n;
    double L = std::log(static_cast<double>(n));
    double ll = std::log(L);
    return n * ll * ll / L;
}

namespace {

// Looks for disjoint S1, S2 of size >= s with no edge between them. S1 is
// grown so its closed neighbourhood stays small; S2 is everything outside it.
std::optional<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> find_empty_cut(
    const LocalGraph& lg, std::size_t s, std::uint64_t seed) {
    std::size_t k = lg.size();
    if (s == 0 || 2 * s > k) return std::nullopt;

    auto finish = [&](const std::vector<char>& inS1, const std::vector<char>& closed)
        -> std::optional<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> {
        std::vector<std::uint32_t> a, b;
        for (std::uint32_t x = 0; x < k; ++x) {
            if (inS1[x]) a.push_back(x);
            else if (!closed[x]) b.push_back(x);
        }
        if (a.size() >= s && b.size() >= s) return std::make_pair(a, b);
        return std::nullopt;
    };

    // unions of whole components
    std::vector<int> label;
    int nc = detail::components(lg, label);
    if (nc > 1) {
        std::vector<std::size_t> sz(nc, 0);
        for (int l : label) ++sz[l];
        std::vector<int> ord(nc);
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return sz[a] < sz[b]; });
        std::vector<char> pick(nc, 0);
        std::size_t acc = 0;
        for (int c : ord) {
            if (acc >= s) break;
            pick[c] = 1;
            acc += sz[c];
        }
        std::vector<char> inS1(k, 0);
        for (std::uint32_t x = 0; x < k; ++x) inS1[x] = pick[label[x]];
        if (auto w = finish(inS1, inS1)) return w;
    }

    // greedy growth from a handful of seeds
    std::vector<std::uint32_t> seeds;
    {
        std::vector<std::uint32_t> ord(k);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(),
                         [&](auto a, auto b) { return lg.adj[a].size() < lg.adj[b].size(); });
        for (std::size_t i = 0; i < std::min<std::size_t>(3, k); ++i) seeds.push_back(ord[i]);
        Rng rng(seed);
        for (int i = 0; i < 3; ++i) seeds.push_back(static_cast<std::uint32_t>(rng.below(k)));
    }
    for (auto s0 : seeds) {
        std::vector<char> inS1(k, 0), closed(k, 0);
        std::vector<int> fresh(k, 0);  // neighbours outside the closed set
        using Item = std::pair<int, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        auto close = [&](std::uint32_t x) {
            if (closed[x]) return;
            closed[x] = 1;
            for (auto y : lg.adj[x]) {
                --fresh[y];
                if (closed[y] && !inS1[y]) pq.push({fresh[y], y});
            }
            int f = 0;
            for (auto y : lg.adj[x]) f += !closed[y];
            fresh[x] = f;
            if (!inS1[x]) pq.push({f, x});
        };
        for (std::uint32_t x = 0; x < k; ++x) fresh[x] = static_cast<int>(lg.adj[x].size());
        std::size_t count = 0;
        auto add = [&](std::uint32_t x) {
            inS1[x] = 1;
            ++count;
            close(x);
            for (auto y : lg.adj[x]) close(y);
        };
        add(s0);
        std::size_t closedCount = 0;
        while (count < s) {
            std::uint32_t pick = k;
            while (!pq.empty()) {
                auto [f, x] = pq.top();
                pq.pop();
                if (inS1[x] || f != fresh[x]) continue;
                pick = x;
                break;
            }
            if (pick == k) {
                // closed set exhausted its component; jump to any untouched vertex
                for (std::uint32_t x = 0; x < k; ++x)
                    if (!closed[x]) {
                        pick = x;
                        break;
                    }
                if (pick == k) break;
            }
            add(pick);
        }
        closedCount = static_cast<std::size_t>(std::count(closed.begin(), closed.end(), 1));
        if (count >= s && k - closedCount >= s)
            if (auto w = finish(inS1, closed)) return w;
    }
    return std::nullopt;
}

std::vector<Vertex> to_global(const LocalGraph& lg, const std::vector<std::uint32_t>& xs) {
    std::vector<Vertex> out;
    out.reserve(xs.size());
    for (auto x : xs) out.push_back(lg.global[x]);
    return out;
}

}  // namespace

CheckReport check_disjoint_sets_edge(const ColoredGraph& g, int s1, std::uint64_t seed) {
    CheckReport rep;
    rep.check = "B5_disjoint_sets_edge";
    rep.params = {{"s1", s1}, {"one_sided", true}};
    if (s1 <= 0 || 2LL * s1 > g.n()) {
        rep.vacuous = true;
        return rep;
    }
    std::vector<Vertex> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    auto lg = detail::induced(g, all);
    if (auto w = find_empty_cut(lg, static_cast<std::size_t>(s1), seed)) {
        rep.pass = false;
        rep.witness = json{{"S1", to_global(lg, w->first)}, {"S2", to_global(lg, w->second)}};
    }
    return rep;
}

std::vector<std::string> DangerReport::violations() const {
    std::vector<std::string> out;
    for (auto* r : {&lemma_a, &lemma_b, &lemma_c})
        if (!r->pass) out.push_back(r->check);
    return out;
}

DangerReport compute_danger_sets(const ColoredGraph& g, const PartitionScheme& scheme,
                                 const ProfileVector& m, const ColorWeights& alpha, double beta,
                                 DangerVariant variant, const Constants& k) {
    const int n = g.n();
    const int r = g.r();
    if (scheme.n != n) throw InputError("scheme is for a different n");
    if (static_cast<int>(m.size()) != r || alpha.r() != r) throw InputError("profile/alpha size mismatch");
    if ((variant == DangerVariant::theorem1) != (scheme.kind == SchemeKind::theorem1))
        throw InputError("scheme does not match the danger-set variant");
    scheme.validate();

    DangerReport rep;
    double logn = std::log(std::max(2, n));
    auto owner = scheme.block_of();

    // colors that take part in A_m
    std::vector<char> counted(r + 1, 0);
    if (variant == DangerVariant::theorem1) {
        for (int i = 1; i <= r; ++i) counted[i] = scheme.block_for_color(i) >= 0;
    } else {
        for (std::size_t b = scheme.sigma + 1; b < scheme.blocks.size(); ++b) counted[scheme.color[b]] = 1;
    }
    rep.am_threshold.assign(r + 1, -1.0);
    for (int i = 1; i <= r; ++i) {
        int b = scheme.block_for_color(i);
        if (b < 0 || !counted[i]) continue;
        rep.am_threshold[i] = scheme.mu(b) * alpha.of(i) * logn / k.am_div;
    }
    Color last = scheme.color.empty() ? Color{0} : scheme.color.back();
    int lastBlock = last ? scheme.block_for_color(last) : -1;
    rep.b_threshold = (variant == DangerVariant::theorem1 ? k.b_factor_t1 : k.b_factor_t2) * r /
                      (beta * alpha.min());

    rep.color_degree.assign(n, std::vector<int>(r + 1, 0));
    rep.degree.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        auto& row = rep.color_degree[v];
        for (auto& nb : g.neighbors(v)) {
            int b = owner[nb.vertex];
            if (b >= 0 && scheme.color[b] == nb.color) ++row[nb.color];
        }
        rep.degree[v] = variant == DangerVariant::theorem1 ? g.degree(v) : (last ? row[last] : 0);
        bool danger = false;
        for (int i = 1; i <= r && !danger; ++i)
            if (counted[i] && row[i] <= rep.am_threshold[i]) danger = true;
        if (danger) rep.A_m.push_back(static_cast<Vertex>(v));
        if (rep.degree[v] <= rep.b_threshold) rep.B.push_back(static_cast<Vertex>(v));
    }
    (void)lastBlock;

    double mu_min = 1.0;
    if (variant == DangerVariant::theorem1) {
        for (int i = 1; i <= r; ++i)
            if (int b = scheme.block_for_color(i); b >= 0) mu_min = std::min(mu_min, scheme.mu(b));
    } else {
        mu_min = scheme.mu_min();
    }
    double amin = alpha.min();

    rep.lemma_a.check = "L3.1a_Am_size";
    double abound = k.am_count_factor * r * std::pow(static_cast<double>(n), 1.0 - amin * mu_min);
    rep.lemma_a.params = {{"size", rep.A_m.size()}, {"bound", abound}, {"mu_min", mu_min}};
    rep.lemma_a.pass = rep.A_m.size() <= abound;
    if (!rep.lemma_a.pass) rep.lemma_a.witness = json{{"size", rep.A_m.size()}};

    rep.lemma_b.check = "L3.1b_Am_local";
    double bbound = k.am_local_factor * r / (amin * mu_min);
    rep.lemma_b.params = {{"radius", k.am_local_radius}, {"bound", bbound}};
    std::vector<char> inA(n, 0), inB(n, 0);
    for (Vertex v : rep.A_m) inA[v] = 1;
    for (Vertex v : rep.B) inB[v] = 1;
    Bfs bfs(n);
    if (rep.A_m.size() > bbound) {
        for (int v = 0; v < n && rep.lemma_b.pass; ++v) {
            double cnt = 0;
            bfs.run(
                v, k.am_local_radius,
                [&](std::uint32_t x, auto&& push) {
                    for (auto& nb : g.neighbors(x)) push(nb.vertex);
                },
                [&](std::uint32_t x, int) {
                    cnt += inA[x];
                    return cnt <= bbound;
                });
            if (cnt > bbound) {
                rep.lemma_b.pass = false;
                rep.lemma_b.witness = json{{"vertex", v}, {"count_at_least", cnt}};
            }
        }
    }

    rep.lemma_c.check = "L3.1c_Am_B_distance";
    rep.lemma_c.params = {{"b_threshold", rep.b_threshold}, {"B", rep.B.size()}, {"A_m", rep.A_m.size()}};
    for (Vertex u : rep.A_m) {
        std::optional<std::pair<Vertex, int>> hit;
        bfs.run(
            u, 2,
            [&](std::uint32_t x, auto&& push) {
                for (auto& nb : g.neighbors(x)) push(nb.vertex);
            },
            [&](std::uint32_t x, int d) {
                if (inB[x]) {
                    hit = {x, d};
                    return false;
                }
                return true;
            });
        if (hit) {
            rep.lemma_c.pass = false;
            rep.lemma_c.witness = json{{"a", u}, {"b", hit->first}, {"distance", hit->second}};
            break;
        }
    }
    return rep;
}

AStarResult compute_A_star(const ColoredGraph& g, double gamma, double c, const ColorWeights& alpha,
                           const Constants& k) {
    if (!(gamma > 0 && gamma < 1)) throw InputError("gamma must lie in (0,1)");
    const int n = g.n();
    const int r = g.r();
    AStarResult res;
    res.gamma = gamma;
    res.c = c;
    res.g = static_cast<int>(std::floor(1.0 / gamma));
    res.width = static_cast<int>(std::floor(gamma * n));
    double logn = std::log(std::max(2, n));
    std::vector<double> thr(r + 1);
    for (int i = 1; i <= r; ++i) thr[i] = gamma * c * alpha.of(i) * logn / k.astar_div;
    int checked = res.g - 1;  // intervals W_1..W_{g-1}
    if (checked <= 0) return res;
    if (res.width == 0) {
        // empty intervals: every count is zero
        for (int v = 0; v < n; ++v) res.members.push_back(static_cast<Vertex>(v));
        return res;
    }
    std::vector<int> cnt(static_cast<std::size_t>(checked) * (r + 1));
    for (int v = 0; v < n; ++v) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (auto& nb : g.neighbors(v)) {
            int j = static_cast<int>(nb.vertex) / res.width;
            if (j < checked) ++cnt[static_cast<std::size_t>(j) * (r + 1) + nb.color];
        }
        bool member = false;
        for (int j = 0; j < checked && !member; ++j)
            for (int i = 1; i <= r; ++i)
                if (cnt[static_cast<std::size_t>(j) * (r + 1) + i] <= thr[i]) {
                    member = true;
                    break;
                }
        if (member) res.members.push_back(static_cast<Vertex>(v));
    }
    return res;
}

CheckReport check_containment(const std::vector<Vertex>& A_m, const AStarResult& a_star) {
    CheckReport rep;
    rep.check = "L6.1_containment";
    rep.params = {{"gamma", a_star.gamma}, {"c", a_star.c}, {"A_m", A_m.size()},
                  {"A_star", a_star.members.size()}};
    std::vector<Vertex> s = a_star.members;
    std::sort(s.begin(), s.end());
    for (Vertex v : A_m)
        if (!std::binary_search(s.begin(), s.end(), v)) {
            rep.pass = false;
            rep.witness = json{{"vertex", v}};
            break;
        }
    return rep;
}

namespace {

// Min-degree peeling inside `verts`; reports the first set of size <= cap whose
// edge count exceeds bound(size).
template <class Bound>
std::optional<std::vector<Vertex>> peel(const ColoredGraph& g, const std::vector<Vertex>& verts,
                                        std::size_t cap, Bound bound) {
    auto lg = detail::induced(g, verts);
    std::size_t k = lg.size();
    std::vector<int> deg(k);
    long long edges = 0;
    for (std::size_t x = 0; x < k; ++x) {
        deg[x] = static_cast<int>(lg.adj[x].size());
        edges += deg[x];
    }
    edges /= 2;
    std::vector<char> gone(k, 0);
    using Item = std::pair<int, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::uint32_t x = 0; x < k; ++x) pq.push({deg[x], x});
    std::size_t alive = k;
    std::vector<std::uint32_t> removed;
    auto snapshot = [&]() {
        std::vector<Vertex> s;
        for (std::uint32_t x = 0; x < k; ++x)
            if (!gone[x]) s.push_back(lg.global[x]);
        return s;
    };
    while (alive > 0) {
        if (alive <= cap && edges > bound(alive)) return snapshot();
        std::uint32_t x;
        for (;;) {
            auto [d, y] = pq.top();
            pq.pop();
            if (!gone[y] && d == deg[y]) {
                x = y;
                break;
            }
        }
        gone[x] = 1;
        --alive;
        edges -= deg[x];
        for (auto y : lg.adj[x])
            if (!gone[y]) pq.push({--deg[y], y});
    }
    return std::nullopt;
}

}  // namespace

CheckReport check_density(const ColoredGraph& g, double rho, double c) {
    CheckReport rep;
    rep.check = "L6.3_density";
    const int n = g.n();
    double logn = std::log(std::max(2, n));
    double s0 = rho * n / logn;
    auto bound = [&](std::size_t s) { return std::exp(1.0) * rho * c * s * logn; };
    rep.params = {{"rho", rho}, {"c", c}, {"max_size", s0}, {"one_sided", true}};
    if (s0 < 1) {
        rep.vacuous = true;
        return rep;
    }
    std::size_t cap = static_cast<std::size_t>(s0);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto w = peel(g, all, cap, bound);
    if (!w) {
        // local peeling around the highest-degree vertices
        std::vector<Vertex> ord = all;
        std::sort(ord.begin(), ord.end(), [&](Vertex a, Vertex b) {
            return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
        });
        Bfs bfs(n);
        for (std::size_t t = 0; t < std::min<std::size_t>(16, ord.size()) && !w; ++t) {
            std::vector<Vertex> ball;
            bfs.run(
                ord[t], 2,
                [&](std::uint32_t x, auto&& push) {
                    for (auto& nb : g.neighbors(x)) push(nb.vertex);
                },
                [&](std::uint32_t x, int) {
                    ball.push_back(x);
                    return true;
                });
            w = peel(g, ball, cap, bound);
        }
    }
    if (w) {
        long long e = 0;
        std::vector<char> in(n, 0);
        for (Vertex v : *w) in[v] = 1;
        for (Vertex v : *w)
            for (auto& nb : g.neighbors(v)) e += in[nb.vertex];
        e /= 2;
        rep.pass = false;
        rep.witness = json{{"set", *w}, {"edges", e}, {"bound", bound(w->size())}};
    }
    return rep;
}

namespace {

// Greedy search for a set S (of non-excluded vertices) with small |N(S)|
// relative to |S|. Calls test(|S|, |N(S)|, S) after each growth step; stops
// when test returns true or the size cap is reached.
template <class Test>
bool grow_low_expansion(const LocalGraph& lg, const std::vector<char>& excluded, std::uint32_t seed,
                        std::size_t cap, Test test, std::vector<std::uint32_t>& S) {
    std::size_t k = lg.size();
    std::vector<char> inS(k, 0), inN(k, 0);
    std::size_t nsize = 0;
    S.clear();
    auto add = [&](std::uint32_t x) {
        inS[x] = 1;
        S.push_back(x);
        if (inN[x]) {
            inN[x] = 0;
            --nsize;
        }
        for (auto y : lg.adj[x])
            if (!inS[y] && !inN[y]) {
                inN[y] = 1;
                ++nsize;
            }
    };
    add(seed);
    if (test(S.size(), nsize)) return true;
    while (S.size() < cap) {
        // best candidate: a neighbour (allowed) whose addition adds the fewest new neighbours
        std::uint32_t best = k;
        long best_gain = 0;
        for (std::uint32_t x = 0; x < k; ++x) {
            if (!inN[x] || excluded[x]) continue;
            long gain = -1;
            for (auto y : lg.adj[x]) gain += !inS[y] && !inN[y];
            if (best == k || gain < best_gain) {
                best = x;
                best_gain = gain;
            }
        }
        if (best == k) break;
        add(best);
        if (test(S.size(), nsize)) return true;
    }
    return false;
}

}  // namespace

ExpansionReport check_expansion(const ColoredGraph& g, const std::vector<Vertex>& block, Color color,
                                const std::vector<Vertex>& A_m, double mu_min, double alpha_min,
                                std::uint64_t seed, const Constants& k) {
    ExpansionReport rep;
    const int n = g.n();
    double logn = std::log(std::max(2, n));
    auto lg = detail::induced(g, block, color);
    std::size_t kk = lg.size();
    std::vector<char> excluded(kk, 0);
    {
        std::vector<Vertex> a = A_m;
        std::sort(a.begin(), a.end());
        for (std::size_t x = 0; x < kk; ++x) excluded[x] = std::binary_search(a.begin(), a.end(), lg.global[x]);
    }

    struct Clause {
        CheckReport* out;
        const char* name;
        double cap;
        std::function<double(std::size_t)> need;
    };
    double am = alpha_min * mu_min;
    Clause clauses[2] = {
        {&rep.a, "L3.4a_expansion", am * n / (k.exp_a_size_div * logn),
         [&](std::size_t s) { return s * am * logn / k.exp_a_div; }},
        {&rep.b, "L3.4b_expansion", am * am * n / k.exp_b_size_div,
         [&](std::size_t s) { return k.exp_b_factor * s; }},
    };
    Rng rng(seed);
    for (auto& cl : clauses) {
        cl.out->check = cl.name;
        cl.out->params = {{"color", color}, {"block", block.size()}, {"max_size", cl.cap}, {"one_sided", true}};
        if (cl.cap < 1) {
            cl.out->vacuous = true;
            continue;
        }
        std::size_t cap = static_cast<std::size_t>(cl.cap);
        // seeds: lowest-degree allowed vertices plus a few random ones
        std::vector<std::uint32_t> ord;
        for (std::uint32_t x = 0; x < kk; ++x)
            if (!excluded[x]) ord.push_back(x);
        std::stable_sort(ord.begin(), ord.end(),
                         [&](auto a, auto b) { return lg.adj[a].size() < lg.adj[b].size(); });
        std::vector<std::uint32_t> seeds(ord.begin(), ord.begin() + std::min<std::size_t>(8, ord.size()));
        for (int t = 0; t < 4 && !ord.empty(); ++t) seeds.push_back(ord[rng.below(ord.size())]);
        // singletons are exact
        for (auto x : ord) {
            if (static_cast<double>(lg.adj[x].size()) < cl.need(1)) {
                cl.out->pass = false;
                cl.out->witness = json{{"set", {lg.global[x]}}, {"neighbourhood", lg.adj[x].size()},
                                       {"required", cl.need(1)}};
                break;
            }
        }
        std::vector<std::uint32_t> S;
        for (auto s0 : seeds) {
            if (!cl.out->pass) break;
            std::size_t nsz = 0;
            bool hit = grow_low_expansion(
                lg, excluded, s0, cap,
                [&](std::size_t s, std::size_t nn) {
                    nsz = nn;
                    return static_cast<double>(nn) < cl.need(s);
                },
                S);
            if (hit) {
                cl.out->pass = false;
                cl.out->witness = json{{"set", to_global(lg, S)}, {"neighbourhood", nsz},
                                       {"required", cl.need(S.size())}};
            }
        }
    }

    rep.c.check = "L3.4c_connected";
    std::vector<int> label;
    int nc = detail::components(lg, label);
    rep.c.params = {{"color", color}, {"block", block.size()}, {"components", nc}};
    if (nc > 1) {
        rep.c.pass = false;
        std::vector<std::size_t> sz(nc, 0);
        for (int l : label) ++sz[l];
        int smallest = static_cast<int>(std::min_element(sz.begin(), sz.end()) - sz.begin());
        std::vector<Vertex> comp;
        for (std::size_t x = 0; x < kk; ++x)
            if (label[x] == smallest) comp.push_back(lg.global[x]);
        rep.c.witness = json{{"component", comp}};
    }
    return rep;
}

ChainBlockReport check_chain_block(const ColoredGraph& g, const std::vector<Vertex>& block, Color color,
                                   std::uint64_t seed) {
    ChainBlockReport rep;
    auto lg = detail::induced(g, block, color);
    std::vector<int> label;
    int nc = detail::components(lg, label);
    rep.connected.check = "L4.4a_connected";
    rep.connected.params = {{"color", color}, {"block", block.size()}, {"components", nc}};
    rep.connected.pass = nc <= 1;
    if (nc > 1) rep.connected.witness = json{{"components", nc}};

    rep.cross_edge.check = "L4.4b_cross_edge";
    double s = b5_set_size(g.n());
    rep.cross_edge.params = {{"color", color}, {"set_size", s}, {"one_sided", true}};
    std::size_t si = static_cast<std::size_t>(std::ceil(s));
    if (2 * si > lg.size()) {
        rep.cross_edge.vacuous = true;
    } else if (auto w = find_empty_cut(lg, si, seed)) {
        rep.cross_edge.pass = false;
        rep.cross_edge.witness = json{{"S", to_global(lg, w->first)}, {"T", to_global(lg, w->second)}};
    }
    return rep;
}

ObstructionReport obstruction_witnesses(const ColoredGraph& g, int r) {
    ObstructionReport rep;
    std::vector<char> seen(r + 1);
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) != r) continue;
        std::fill(seen.begin(), seen.end(), 0);
        bool distinct = true;
        for (auto& nb : g.neighbors(v)) {
            if (nb.color > r || seen[nb.color]) {
                distinct = false;
                break;
            }
            seen[nb.color] = 1;
        }
        if (distinct) rep.witnesses.push_back(static_cast<Vertex>(v));
    }
    rep.infeasible = static_cast<int>(rep.witnesses.size()) > r;
    return rep;
}

}  // namespace hcp
