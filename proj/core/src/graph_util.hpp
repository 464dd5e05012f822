#pragma once

#include <cstdint>
#include <vector>

#include "hcp/model.hpp"

namespace hcp::detail {

// Plain adjacency lists over local indices 0..k-1.
struct LocalGraph {
    std::vector<Vertex> global;  // local -> global
    std::vector<std::vector<std::uint32_t>> adj;
    std::size_t size() const { return adj.size(); }
};

// Subgraph induced by `vertices` keeping edges of color `color` (0 = any).
LocalGraph induced(const ColoredGraph& g, const std::vector<Vertex>& vertices, Color color = 0);

// Reusable BFS with generation stamps.
class Bfs {
public:
    explicit Bfs(std::size_t n) : stamp_(n, 0), dist_(n, 0) {}

    template <class NbrFn, class VisitFn>
    void run(std::uint32_t src, int radius, NbrFn&& nbrs, VisitFn&& visit) {
        if (++gen_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            gen_ = 1;
        }
        queue_.clear();
        queue_.push_back(src);
        stamp_[src] = gen_;
        dist_[src] = 0;
        for (std::size_t h = 0; h < queue_.size(); ++h) {
            std::uint32_t x = queue_[h];
            if (!visit(x, dist_[x])) return;
            if (dist_[x] >= radius) continue;
            nbrs(x, [&](std::uint32_t y) {
                if (stamp_[y] != gen_) {
                    stamp_[y] = gen_;
                    dist_[y] = dist_[x] + 1;
                    queue_.push_back(y);
                }
            });
        }
    }

private:
    std::vector<std::uint32_t> stamp_;
    std::vector<int> dist_;
    std::vector<std::uint32_t> queue_;
    std::uint32_t gen_ = 0;
};

// Component label per local vertex; returns number of components.
int components(const LocalGraph& lg, std::vector<int>& label);

}  // namespace hcp::detail
