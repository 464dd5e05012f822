#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hcp/hamilton.hpp"
#include "hcp/rng.hpp"

namespace hcp::detail {

using Partners = std::vector<std::array<Vertex, 2>>;

// A path with a fixed first vertex, grown on the open edges of one color
// inside a region. Forced partner pairs (cherries) are never split: a forced
// edge is added as soon as one of its ends becomes the path end and is never
// deleted by a rotation.
class PathSearch {
public:
    PathSearch(const SolverState& st, Color c, std::vector<char> region, const Partners* forced = nullptr);

    void reset(Vertex start);
    void set_path(const std::vector<Vertex>& p);

    const std::vector<Vertex>& path() const { return path_; }
    std::size_t size() const { return path_.size(); }
    Vertex end() const { return path_.back(); }
    bool used(Vertex v) const { return pos_[v] >= 0; }
    bool in_region(Vertex v) const { return region_[v] != 0; }
    void set_region(Vertex v, bool in) { region_[v] = in; }
    std::size_t region_size() const;
    Color color() const { return c_; }

    template <class F>
    void for_nbrs(Vertex v, F&& f) const {
        for (auto& nb : st_.adj(v))
            if ((!c_ || nb.color == c_) && region_[nb.vertex]) f(nb.vertex);
    }
    int region_degree(Vertex v) const;
    int free_degree(Vertex v) const;  // unused region neighbours

    bool forced(Vertex a, Vertex b) const;
    int forced_count(Vertex v) const;
    // A forced partner of v that is not yet on the path.
    Vertex pending(Vertex v) const;

    // Whether u may follow `from` when `from` is the path end.
    bool can_follow(Vertex from, Vertex u) const;
    bool has_extension(Vertex from) const;
    void append(Vertex u);
    void truncate(std::size_t len);

    // Chord end -> path[i]; the new end is path[i+1].
    bool can_rotate(std::size_t i) const;
    void rotate(std::size_t i);

    // Inserts unused u between two consecutive path vertices if the edges allow.
    bool try_insert(Vertex u);

    // Greedy extension up to `target` vertices. key(u) is minimized (forced
    // partners always win); ties broken by the rng.
    void extend(std::size_t target, const std::function<double(Vertex)>& key, Rng& rng);

    // Breadth-first search over rotations with the first vertex fixed. Stops
    // at the first end for which pred holds and adopts that path. `cap`
    // bounds the number of stored paths. The discovered ends are kept in
    // last_ends().
    bool rotate_to(const std::function<bool(Vertex)>& pred, std::size_t cap);
    // END family: every end reachable within the cap together with its path.
    void end_family(std::size_t cap, std::vector<Vertex>& ends, std::vector<std::vector<Vertex>>& paths);
    const std::vector<Vertex>& last_ends() const { return last_ends_; }

    // Extension, rotations and insertions until target vertices or a stall.
    bool grow(std::size_t target, const std::function<double(Vertex)>& key, Rng& rng, std::size_t cap,
              bool insertions = true);

    // Warnsdorff key: fewest unused neighbours first.
    std::function<double(Vertex)> warnsdorff() const {
        return [this](Vertex u) { return static_cast<double>(free_degree(u)); };
    }

private:
    void notify() const;

    const SolverState& st_;
    Color c_;
    std::vector<char> region_;
    const Partners* forced_;
    std::vector<Vertex> path_;
    std::vector<int> pos_;
    std::vector<Vertex> last_ends_;
    // BFS scratch
    std::vector<std::uint32_t> seen_;
    std::uint32_t gen_ = 0;
    std::vector<int> scratch_pos_;
};

std::vector<char> mask_of(int n, const std::vector<Vertex>& vs);
std::size_t default_cap(int n, std::size_t requested);

}  // namespace hcp::detail
