#include "hcp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hcp {

ColorWeights::ColorWeights(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw InputError("alpha must have at least one entry");
    double s = 0;
    for (double a : alpha_) {
        if (!(a > 0)) throw InputError("alpha entries must be positive");
        s += a;
    }
    if (std::abs(s - 1.0) > 1e-12) throw InputError("alpha must sum to 1");
}

ColorWeights ColorWeights::uniform(int r) {
    if (r < 1) throw InputError("r must be >= 1");
    std::vector<double> a(r, 1.0 / r);
    // keep the sum within tolerance for awkward r
    double s = 0;
    for (int i = 0; i + 1 < r; ++i) s += a[i];
    a[r - 1] = 1.0 - s;
    return ColorWeights(std::move(a));
}

double ColorWeights::min() const {
    return *std::min_element(alpha_.begin(), alpha_.end());
}

Color ColorWeights::sample(double u) const {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < alpha_.size(); ++i) {
        acc += alpha_[i];
        if (u < acc) return static_cast<Color>(i + 1);
    }
    return static_cast<Color>(alpha_.size());
}

ColoredGraph::ColoredGraph(int n, int r, std::vector<Edge> edges)
    : n_(n), r_(r), edges_(std::move(edges)) {
    if (n < 0) throw InputError("n must be non-negative");
    if (r < 1) throw InputError("r must be >= 1");
    offset_.assign(n + 1, 0);
    for (auto& e : edges_) {
        if (e.u >= static_cast<Vertex>(n) || e.v >= static_cast<Vertex>(n))
            throw InputError("edge endpoint out of range");
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (e.color < 1 || e.color > r)
            throw InputError("edge color out of range: " + std::to_string(e.color));
        if (e.u > e.v) std::swap(e.u, e.v);
        ++offset_[e.u + 1];
        ++offset_[e.v + 1];
    }
    for (int i = 0; i < n; ++i) offset_[i + 1] += offset_[i];
    adj_.resize(offset_[n]);
    std::vector<std::uint32_t> pos(offset_.begin(), offset_.end() - 1);
    for (std::uint32_t k = 0; k < edges_.size(); ++k) {
        const auto& e = edges_[k];
        adj_[pos[e.u]++] = {e.v, e.color, k};
        adj_[pos[e.v]++] = {e.u, e.color, k};
    }
    for (int v = 0; v < n; ++v) {
        auto b = adj_.begin() + offset_[v], en = adj_.begin() + offset_[v + 1];
        std::sort(b, en, [](const Neighbor& a, const Neighbor& c) { return a.vertex < c.vertex; });
        for (auto it = b; it + 1 < en; ++it)
            if (it->vertex == (it + 1)->vertex)
                throw InputError("parallel edge " + std::to_string(v) + "-" +
                                 std::to_string(it->vertex));
    }
}

int ColoredGraph::color_degree(Vertex v, Color c) const {
    int d = 0;
    for (auto& nb : neighbors(v)) d += nb.color == c;
    return d;
}

std::optional<std::uint32_t> ColoredGraph::edge_index(Vertex u, Vertex v) const {
    if (u >= static_cast<Vertex>(n_) || v >= static_cast<Vertex>(n_)) return std::nullopt;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto r = neighbors(u);
    auto it = std::lower_bound(r.begin(), r.end(), v,
                               [](const Neighbor& a, Vertex x) { return a.vertex < x; });
    if (it != r.end() && it->vertex == v) return it->edge;
    return std::nullopt;
}

bool ColoredGraph::has_edge(Vertex u, Vertex v) const { return edge_index(u, v).has_value(); }

Color ColoredGraph::color_of(Vertex u, Vertex v) const {
    auto k = edge_index(u, v);
    return k ? edges_[*k].color : Color{0};
}

bool ColoredGraph::adjacency_consistent() const {
    std::size_t total = 0;
    for (int v = 0; v < n_; ++v) {
        for (auto& nb : neighbors(v)) {
            if (nb.edge >= edges_.size()) return false;
            const auto& e = edges_[nb.edge];
            if (!((e.u == static_cast<Vertex>(v) && e.v == nb.vertex) ||
                  (e.v == static_cast<Vertex>(v) && e.u == nb.vertex)))
                return false;
            if (e.color != nb.color) return false;
            ++total;
        }
    }
    if (total != 2 * edges_.size()) return false;
    for (const auto& e : edges_) {
        auto k = edge_index(e.u, e.v);
        if (!k || edges_[*k] != e) return false;
    }
    return true;
}

ColoredGraph ColoredGraph::relabeled(const std::vector<Vertex>& perm) const {
    if (perm.size() != static_cast<std::size_t>(n_)) throw InputError("permutation size mismatch");
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (auto e : edges_) es.push_back({perm[e.u], perm[e.v], e.color});
    return ColoredGraph(n_, r_, std::move(es));
}

ColoredDigraph::ColoredDigraph(int n, int r, std::vector<Arc> arcs)
    : n_(n), r_(r), arcs_(std::move(arcs)) {
    if (n < 0) throw InputError("n must be non-negative");
    if (r < 1) throw InputError("r must be >= 1");
    offset_.assign(n + 1, 0);
    for (auto& a : arcs_) {
        if (a.from >= static_cast<Vertex>(n) || a.to >= static_cast<Vertex>(n))
            throw InputError("arc endpoint out of range");
        if (a.from == a.to) throw InputError("self-loop arc");
        if (a.color < 1 || a.color > r) throw InputError("arc color out of range");
        ++offset_[a.from + 1];
    }
    for (int i = 0; i < n; ++i) offset_[i + 1] += offset_[i];
    out_.resize(offset_[n]);
    std::vector<std::uint32_t> pos(offset_.begin(), offset_.end() - 1);
    for (auto& a : arcs_) out_[pos[a.from]++] = {a.to, a.color};
    for (int v = 0; v < n; ++v) {
        auto b = out_.begin() + offset_[v], e = out_.begin() + offset_[v + 1];
        std::sort(b, e);
        for (auto it = b; it + 1 < e; ++it)
            if (it->first == (it + 1)->first) throw InputError("duplicate arc");
    }
}

bool ColoredDigraph::has_arc(Vertex from, Vertex to) const { return color_of(from, to) != 0; }

Color ColoredDigraph::color_of(Vertex from, Vertex to) const {
    if (from >= static_cast<Vertex>(n_)) return 0;
    auto b = out_.begin() + offset_[from], e = out_.begin() + offset_[from + 1];
    auto it = std::lower_bound(b, e, std::make_pair(to, Color{0}));
    if (it != e && it->first == to) return it->second;
    return 0;
}

int profile_sum(const ProfileVector& m) { return std::accumulate(m.begin(), m.end(), 0); }

void validate_profile(const ProfileVector& m, int n, int r) {
    if (static_cast<int>(m.size()) != r)
        throw InputError("profile has " + std::to_string(m.size()) + " parts, expected " +
                         std::to_string(r));
    for (int x : m)
        if (x < 0 || x > n) throw InputError("profile part out of range");
    if (profile_sum(m) != n) throw InputError("profile does not sum to n");
}

int beta_floor(int n, double beta) {
    return std::max(0, static_cast<int>(std::ceil(beta * n - 1e-9)));
}

bool in_M_beta(const ProfileVector& m, int n, double beta) {
    int lo = beta_floor(n, beta);
    for (int x : m)
        if (x < lo) return false;
    return profile_sum(m) == n;
}

std::string profile_to_string(const ProfileVector& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(m[i]);
    }
    return s;
}

ProfileVector parse_profile(const std::string& s) {
    ProfileVector m;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            int x = std::stoi(tok, &used);
            if (used != tok.size()) throw InputError("bad profile entry: " + tok);
            m.push_back(x);
        } catch (const std::logic_error&) {
            throw InputError("bad profile entry: " + tok);
        }
    }
    if (m.empty()) throw InputError("empty profile");
    return m;
}

const char* to_string(Violation v) {
    switch (v) {
        case Violation::none: return "none";
        case Violation::not_permutation: return "not_permutation";
        case Violation::missing_edge: return "missing_edge";
        case Violation::boundary_mismatch: return "boundary_mismatch";
        case Violation::wrong_color: return "wrong_color";
    }
    return "?";
}

namespace {

VerificationReport fail(Violation why, int seg, int pos, Vertex u, Vertex v, std::string msg) {
    VerificationReport r;
    r.ok = false;
    r.violation = why;
    r.segment = seg;
    r.position = pos;
    r.u = u;
    r.v = v;
    r.message = std::move(msg);
    return r;
}

template <class ColorFn>
VerificationReport verify_impl(int n, int r, const ProfileVector& m,
                               const HamiltonCertificate& cert, ColorFn color) {
    if (static_cast<int>(cert.order.size()) != n)
        throw StructuralError("order has length " + std::to_string(cert.order.size()) +
                              ", graph has n=" + std::to_string(n));
    if (static_cast<int>(cert.boundaries.size()) != r || static_cast<int>(m.size()) != r)
        throw StructuralError("expected " + std::to_string(r) + " boundaries and profile parts");
    if (profile_sum(m) != n) throw StructuralError("profile does not sum to n");

    std::vector<char> seen(n, 0);
    for (int k = 0; k < n; ++k) {
        Vertex x = cert.order[k];
        if (x >= static_cast<Vertex>(n) || seen[x])
            return fail(Violation::not_permutation, -1, k, x, x,
                        "order is not a permutation at index " + std::to_string(k));
        seen[x] = 1;
    }
    for (int i = 0; i < r; ++i) {
        int b = cert.boundaries[i];
        if (b < 0 || b >= n)
            return fail(Violation::boundary_mismatch, i, b, 0, 0, "boundary out of range");
        if (m[i] < 0) return fail(Violation::boundary_mismatch, i, b, 0, 0, "negative profile part");
    }
    for (int i = 0; i < r; ++i) {
        int expect = (cert.boundaries[i] + m[i]) % n;
        int next = cert.boundaries[(i + 1) % r];
        if (expect != next)
            return fail(Violation::boundary_mismatch, i, next, 0, 0,
                        "segment " + std::to_string(i + 1) + " ends at edge " +
                            std::to_string(expect) + " but next boundary is " +
                            std::to_string(next));
    }
    for (int i = 0; i < r; ++i) {
        for (int t = 0; t < m[i]; ++t) {
            int k = (cert.boundaries[i] + t) % n;
            Vertex u = cert.order[k], v = cert.order[(k + 1) % n];
            Color c = color(u, v);
            if (c == 0)
                return fail(Violation::missing_edge, i, k, u, v,
                            "edge " + std::to_string(u) + "-" + std::to_string(v) + " missing");
            if (c != i + 1)
                return fail(Violation::wrong_color, i, k, u, v,
                            "edge " + std::to_string(u) + "-" + std::to_string(v) + " has color " +
                                std::to_string(c) + ", segment " + std::to_string(i + 1) +
                                " needs color " + std::to_string(i + 1));
        }
    }
    return {};
}

}  // namespace

VerificationReport verify_certificate(const ColoredGraph& g, const ProfileVector& m,
                                      const HamiltonCertificate& cert) {
    return verify_impl(g.n(), g.r(), m, cert,
                       [&](Vertex u, Vertex v) { return g.color_of(u, v); });
}

VerificationReport verify_directed_certificate(const ColoredDigraph& d, const ProfileVector& m,
                                               const HamiltonCertificate& cert) {
    return verify_impl(d.n(), d.r(), m, cert,
                       [&](Vertex u, Vertex v) { return d.color_of(u, v); });
}

HamiltonCertificate certificate_from_cycle(std::vector<Vertex> order, const ProfileVector& m,
                                           int start) {
    HamiltonCertificate c;
    int n = static_cast<int>(order.size());
    c.order = std::move(order);
    int b = n ? ((start % n) + n) % n : 0;
    for (int x : m) {
        c.boundaries.push_back(b);
        b = n ? (b + x) % n : 0;
    }
    return c;
}

std::vector<Color> color_word(const ColoredGraph& g, const std::vector<Vertex>& order) {
    std::vector<Color> w(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        w[k] = g.color_of(order[k], order[(k + 1) % order.size()]);
    return w;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

ProfileSpace::ProfileSpace(int n, int r, double beta) : n_(n), r_(r) {
    if (n < 1 || r < 1) throw InputError("profile space needs n >= 1 and r >= 1");
    if (beta < 0) throw InputError("beta must be non-negative");
    lo_ = beta_floor(n, beta);
}

ProfileSpace::iterator ProfileSpace::begin() const {
    iterator it;
    if (static_cast<long long>(lo_) * r_ > n_) return it;
    it.lo_ = lo_;
    it.cur_.assign(r_, lo_);
    it.cur_[r_ - 1] = n_ - lo_ * (r_ - 1);
    it.done_ = false;
    return it;
}

ProfileSpace::iterator& ProfileSpace::iterator::operator++() {
    // Lexicographic successor: the rightmost position j < r-1 with spare units
    // after it takes one, everything between resets to lo, the last part absorbs the rest.
    int r = static_cast<int>(cur_.size());
    int slack = 0;
    for (int j = r - 2; j >= 0; --j) {
        slack += cur_[j + 1] - lo_;
        if (slack > 0) {
            ++cur_[j];
            for (int k = j + 1; k < r - 1; ++k) cur_[k] = lo_;
            cur_[r - 1] = lo_ + slack - 1;
            return *this;
        }
    }
    done_ = true;
    return *this;
}

std::uint64_t ProfileSpace::size() const {
    long long free = static_cast<long long>(n_) - static_cast<long long>(lo_) * r_;
    if (free < 0) return 0;
    return binomial(static_cast<int>(free) + r_ - 1, r_ - 1);
}

std::vector<ProfileVector> ProfileSpace::to_vector() const {
    std::vector<ProfileVector> out;
    for (auto it = begin(); it != end(); ++it) out.push_back(*it);
    return out;
}

}  // namespace hcp
