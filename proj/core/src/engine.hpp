#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hcp/hamilton.hpp"
#include "path_search.hpp"

namespace hcp::detail {

// Cherry partners of color c merged with extra forced pairs.
Partners merged_partners(const SolverState& st, Color c, const Partners* extra);

// Grows ps to `target` vertices, opening reserve edges from `pools` in order
// whenever the rotation search stalls.
bool hamilton_with_boosters(SolverState& st, PathSearch& ps, std::size_t target, Rng& rng, std::size_t cap,
                            const std::vector<int>& pools);

std::vector<std::vector<Vertex>> glue_impl(SolverState& st, const std::vector<BlockSpec>& blocks,
                                           const std::vector<Vertex>& entries, Vertex closing_vertex,
                                           Color closing_color, const GlueOptions& opt, const Partners* extra,
                                           Rng& rng);

struct ChainHooks {
    // Extension priority for chain j (minimized); Warnsdorff when empty.
    std::function<double(const PathSearch&, Vertex)> key;
    // Score for picking the first vertex (maximized) on top of the starter count.
    std::function<double(Vertex)> start_bonus;
    std::size_t cap = 0;
    int start_pool = 5;  // first vertex drawn among this many best candidates
    // Per segment: vertices the segment should pass through. Each is reached
    // by a shortest detour before the segment is padded to its length.
    std::vector<std::vector<Vertex>> absorb;
};

ShortChain build_chain_impl(const SolverState& st, const std::vector<ChainSpec>& chain,
                            const std::vector<Vertex>& starter_region, Color next_color,
                            const std::vector<Vertex>& next_region, Rng& rng, const ChainHooks& hooks);

// Hamilton cycle whose k-th edge has color word[k], by rotation-extension
// along the word with random restarts. Returns the cyclic order.
std::optional<std::vector<Vertex>> word_cycle(const ColoredGraph& g, const std::vector<Color>& word, Rng& rng,
                                              int tries, std::size_t cap);

}  // namespace hcp::detail
