#include "path_search.hpp"

#include <algorithm>
#include <cmath>

namespace hcp::detail {

std::vector<char> mask_of(int n, const std::vector<Vertex>& vs) {
    std::vector<char> m(n, 0);
    for (Vertex v : vs) m[v] = 1;
    return m;
}

std::size_t default_cap(int n, std::size_t requested) {
    if (requested) return requested;
    return std::max<std::size_t>({4, static_cast<std::size_t>(0.02 * n), 256});
}

PathSearch::PathSearch(const SolverState& st, Color c, std::vector<char> region, const Partners* forced)
    : st_(st), c_(c), region_(std::move(region)), forced_(forced) {
    pos_.assign(st.n(), -1);
    seen_.assign(st.n(), 0);
    scratch_pos_.assign(st.n(), -1);
}

void PathSearch::reset(Vertex start) {
    for (Vertex v : path_) pos_[v] = -1;
    path_.clear();
    path_.push_back(start);
    pos_[start] = 0;
}

void PathSearch::set_path(const std::vector<Vertex>& p) {
    for (Vertex v : path_) pos_[v] = -1;
    path_ = p;
    for (std::size_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = static_cast<int>(i);
}

std::size_t PathSearch::region_size() const {
    return static_cast<std::size_t>(std::count(region_.begin(), region_.end(), 1));
}

int PathSearch::region_degree(Vertex v) const {
    int d = 0;
    for_nbrs(v, [&](Vertex) { ++d; });
    return d;
}

int PathSearch::free_degree(Vertex v) const {
    int d = 0;
    for_nbrs(v, [&](Vertex u) { d += pos_[u] < 0; });
    return d;
}

bool PathSearch::forced(Vertex a, Vertex b) const {
    if (!forced_) return false;
    auto& p = (*forced_)[a];
    return p[0] == b || p[1] == b;
}

int PathSearch::forced_count(Vertex v) const {
    if (!forced_) return 0;
    auto& p = (*forced_)[v];
    return (p[0] != kNoVertex) + (p[1] != kNoVertex);
}

Vertex PathSearch::pending(Vertex v) const {
    if (!forced_) return kNoVertex;
    for (Vertex q : (*forced_)[v])
        if (q != kNoVertex && pos_[q] < 0) return q;
    return kNoVertex;
}

bool PathSearch::can_follow(Vertex from, Vertex u) const {
    if (!region_[u] || pos_[u] >= 0) return false;
    Vertex p = pending(from);
    if (p != kNoVertex && p != u) return false;
    if (forced_) {
        int other = 0;
        for (Vertex q : (*forced_)[u]) {
            if (q == kNoVertex || q == from) continue;
            if (pos_[q] >= 0) return false;
            ++other;
        }
        if (other > 1) return false;
    }
    return true;
}

bool PathSearch::has_extension(Vertex from) const {
    bool ok = false;
    for (auto& nb : st_.adj(from)) {
        if (c_ && nb.color != c_) continue;
        if (can_follow(from, nb.vertex)) {
            ok = true;
            break;
        }
    }
    return ok;
}

void PathSearch::append(Vertex u) {
    pos_[u] = static_cast<int>(path_.size());
    path_.push_back(u);
}

void PathSearch::truncate(std::size_t len) {
    while (path_.size() > len) {
        pos_[path_.back()] = -1;
        path_.pop_back();
    }
}

bool PathSearch::can_rotate(std::size_t i) const {
    if (i + 2 >= path_.size()) return false;
    if (pending(end()) != kNoVertex) return false;
    return !forced(path_[i], path_[i + 1]);
}

void PathSearch::rotate(std::size_t i) {
    std::reverse(path_.begin() + static_cast<std::ptrdiff_t>(i) + 1, path_.end());
    for (std::size_t k = i + 1; k < path_.size(); ++k) pos_[path_[k]] = static_cast<int>(k);
}

bool PathSearch::try_insert(Vertex u) {
    if (!region_[u] || pos_[u] >= 0) return false;
    for (auto& nb : st_.adj(u)) {
        if (c_ && nb.color != c_) continue;
        Vertex a = nb.vertex;
        if (pos_[a] < 0) continue;
        std::size_t i = static_cast<std::size_t>(pos_[a]);
        if (i + 1 >= path_.size()) continue;
        Vertex b = path_[i + 1];
        Color cb = st_.open_color(u, b);
        if (!cb || (c_ && cb != c_)) continue;
        if (forced(a, b)) continue;
        if (forced_) {
            bool ok = true;
            for (Vertex q : (*forced_)[u])
                if (q != kNoVertex && q != a && q != b) ok = false;
            if (!ok) continue;
        }
        path_.insert(path_.begin() + static_cast<std::ptrdiff_t>(i) + 1, u);
        for (std::size_t k = i + 1; k < path_.size(); ++k) pos_[path_[k]] = static_cast<int>(k);
        return true;
    }
    return false;
}

void PathSearch::extend(std::size_t target, const std::function<double(Vertex)>& key, Rng& rng) {
    std::vector<Vertex> best;
    while (path_.size() < target) {
        Vertex e = end();
        Vertex p = pending(e);
        if (p != kNoVertex) {
            if (!can_follow(e, p)) break;
            Color cp = st_.open_color(e, p);
            if (!cp || (c_ && cp != c_)) break;
            append(p);
            continue;
        }
        best.clear();
        double bk = 0;
        for (auto& nb : st_.adj(e)) {
            if (c_ && nb.color != c_) continue;
            Vertex u = nb.vertex;
            if (!can_follow(e, u)) continue;
            double k = key(u);
            // a vertex with no unused neighbour ends the path for good
            if (path_.size() + 1 < target && pending(u) == kNoVertex && free_degree(u) == 0) k += 1e12;
            if (best.empty() || k < bk) {
                best.assign(1, u);
                bk = k;
            } else if (k == bk) {
                best.push_back(u);
            }
        }
        if (best.empty()) break;
        append(best[rng.below(best.size())]);
    }
}

bool PathSearch::rotate_to(const std::function<bool(Vertex)>& pred, std::size_t cap) {
    last_ends_.clear();
    if (++gen_ == 0) {
        std::fill(seen_.begin(), seen_.end(), 0);
        gen_ = 1;
    }
    std::vector<std::vector<Vertex>> nodes;
    nodes.reserve(cap + 1);
    nodes.push_back(path_);
    seen_[end()] = gen_;
    last_ends_.push_back(end());
    if (pred(end())) return true;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::vector<Vertex>& P = nodes[k];
        Vertex e = P.back();
        if (pending(e) != kNoVertex) continue;
        for (std::size_t i = 0; i < P.size(); ++i) scratch_pos_[P[i]] = static_cast<int>(i);
        for (auto& nb : st_.adj(e)) {
            if (c_ && nb.color != c_) continue;
            Vertex w = nb.vertex;
            if (pos_[w] < 0) continue;
            std::size_t i = static_cast<std::size_t>(scratch_pos_[w]);
            if (i + 2 >= P.size()) continue;
            if (forced(P[i], P[i + 1])) continue;
            Vertex ne = P[i + 1];
            if (seen_[ne] == gen_) continue;
            seen_[ne] = gen_;
            last_ends_.push_back(ne);
            if (pred(ne)) {
                std::vector<Vertex> q = P;
                std::reverse(q.begin() + static_cast<std::ptrdiff_t>(i) + 1, q.end());
                set_path(q);
                notify();
                return true;
            }
            if (nodes.size() < cap) {
                nodes.push_back(P);
                auto& q = nodes.back();
                std::reverse(q.begin() + static_cast<std::ptrdiff_t>(i) + 1, q.end());
            }
        }
    }
    return false;
}

void PathSearch::end_family(std::size_t cap, std::vector<Vertex>& ends, std::vector<std::vector<Vertex>>& paths) {
    ends.clear();
    paths.clear();
    std::vector<Vertex> keep = path_;
    // collect stored nodes by running the BFS with a predicate that never holds
    std::vector<std::vector<Vertex>> nodes;
    if (++gen_ == 0) {
        std::fill(seen_.begin(), seen_.end(), 0);
        gen_ = 1;
    }
    nodes.reserve(cap + 1);
    nodes.push_back(path_);
    seen_[end()] = gen_;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::vector<Vertex>& P = nodes[k];
        Vertex e = P.back();
        if (pending(e) != kNoVertex) continue;
        for (std::size_t i = 0; i < P.size(); ++i) scratch_pos_[P[i]] = static_cast<int>(i);
        for (auto& nb : st_.adj(e)) {
            if (c_ && nb.color != c_) continue;
            Vertex w = nb.vertex;
            if (pos_[w] < 0) continue;
            std::size_t i = static_cast<std::size_t>(scratch_pos_[w]);
            if (i + 2 >= P.size() || forced(P[i], P[i + 1])) continue;
            Vertex ne = P[i + 1];
            if (seen_[ne] == gen_ || nodes.size() >= cap) continue;
            seen_[ne] = gen_;
            nodes.push_back(P);
            auto& q = nodes.back();
            std::reverse(q.begin() + static_cast<std::ptrdiff_t>(i) + 1, q.end());
        }
    }
    for (auto& q : nodes) {
        ends.push_back(q.back());
        paths.push_back(std::move(q));
    }
    set_path(keep);
}

bool PathSearch::grow(std::size_t target, const std::function<double(Vertex)>& key, Rng& rng, std::size_t cap,
                      bool insertions) {
    for (;;) {
        extend(target, key, rng);
        notify();
        if (path_.size() >= target) return true;
        if (rotate_to([&](Vertex e) { return has_extension(e); }, cap)) continue;
        if (insertions) {
            bool any = false;
            for (Vertex u = 0; u < region_.size() && path_.size() < target; ++u)
                if (region_[u] && pos_[u] < 0 && try_insert(u)) any = true;
            if (any) {
                notify();
                continue;
            }
        }
        return false;
    }
}

void PathSearch::notify() const {
    if (st_.path_hook) st_.path_hook(path_, c_);
}

}  // namespace hcp::detail
