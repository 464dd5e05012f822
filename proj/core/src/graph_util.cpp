#include "graph_util.hpp"

#include <algorithm>

namespace hcp::detail {

LocalGraph induced(const ColoredGraph& g, const std::vector<Vertex>& vertices, Color color) {
    LocalGraph lg;
    lg.global = vertices;
    std::vector<std::int32_t> local(g.n(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<std::int32_t>(i);
    lg.adj.resize(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (auto& nb : g.neighbors(vertices[i])) {
            if (color && nb.color != color) continue;
            if (local[nb.vertex] >= 0) lg.adj[i].push_back(static_cast<std::uint32_t>(local[nb.vertex]));
        }
    }
    return lg;
}

int components(const LocalGraph& lg, std::vector<int>& label) {
    label.assign(lg.size(), -1);
    int k = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < lg.size(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = k;
        stack.assign(1, s);
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : lg.adj[x])
                if (label[y] < 0) {
                    label[y] = k;
                    stack.push_back(y);
                }
        }
        ++k;
    }
    return k;
}

}  // namespace hcp::detail
