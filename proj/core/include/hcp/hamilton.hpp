#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcp/model.hpp"
#include "hcp/structure.hpp"

namespace hcp {

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

enum class Stage { none, stage1, stage2, stage3, glue, infeasible };
const char* to_string(Stage s);

struct StageError : std::runtime_error {
    Stage stage;
    StageError(Stage s, const std::string& msg) : std::runtime_error(msg), stage(s) {}
};

// ---- partitions ----------------------------------------------------------

PartitionScheme partition_for_profile(int n, const ProfileVector& m);

// Colors j with 1 <= m_j <= n/(4r), in increasing color order.
std::vector<Color> small_colors(int n, const ProfileVector& m);

// m is indexed so that entries 0..sigma-1 are the small colors. `colors`
// maps those positions to actual colors (identity when empty).
PartitionScheme partition_theorem2(int n, const ProfileVector& m, int sigma,
                                   const std::vector<Color>& colors = {});

// ---- cherries -------------------------------------------------------------

struct Cherry {
    Vertex w1 = 0, v = 0, w2 = 0;
    Color color = 1;
    int host = -1;  // block index
};

struct CherrySystem {
    std::vector<Cherry> cherries;

    // Empty string when the system is valid for g with centers covering A_m.
    std::string check(const ColoredGraph& g, const std::vector<Vertex>& A_m) const;
    // Per-vertex forced partners (kNoVertex when unused), restricted to one color.
    std::vector<std::array<Vertex, 2>> partners(int n, Color color) const;
};

struct CherryPlacement {
    CherrySystem system;
    PartitionScheme scheme;
};

// Throws StageError(stage1) when some dangerous vertex has no usable pair.
CherryPlacement place_cherries(const ColoredGraph& g, const PartitionScheme& scheme,
                               const DangerReport& danger, std::optional<Color> force_color = std::nullopt);

// ---- solver state -----------------------------------------------------------

// The graph split into an open working part and reserve pools F_0..F_r.
class SolverState {
public:
    // layer[e] == 1 marks open edges; the rest are shuffled into r+1 pools.
    SolverState(const ColoredGraph& g, const std::vector<std::uint8_t>& layer, std::uint64_t seed);
    explicit SolverState(const ColoredGraph& g);  // everything open

    const ColoredGraph& graph() const { return *g_; }
    int n() const { return g_->n(); }
    int r() const { return g_->r(); }

    const std::vector<Neighbor>& adj(Vertex v) const { return adj_[v]; }
    bool is_open(std::uint32_t e) const { return open_[e] != 0; }
    // Color of the open edge uv, 0 when absent or still in reserve.
    Color open_color(Vertex u, Vertex v) const;
    int open_color_degree(Vertex v, Color c) const;

    int pool_count() const { return static_cast<int>(pools_.size()); }
    std::size_t pool_remaining(int pool) const { return pools_[pool].size() - cursor_[pool]; }
    std::size_t reserve_remaining() const;
    // Opens the next reserve edge of the pool; nullopt when exhausted.
    std::optional<Edge> open_next(int pool);
    const std::vector<std::uint32_t>& opened_log() const { return log_; }

    CherrySystem cherries;

    // Instrumentation: called with every intermediate path during block search.
    std::function<void(const std::vector<Vertex>&, Color)> path_hook;

private:
    void open_edge(std::uint32_t e);

    const ColoredGraph* g_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<std::uint8_t> open_;
    std::vector<std::vector<std::uint32_t>> pools_;
    std::vector<std::size_t> cursor_;
    std::vector<std::uint32_t> log_;
};

// ---- rotation-extension -------------------------------------------------------

struct RotationOptions {
    std::size_t end_cap = 0;  // END family cap; 0 picks max(4, 0.02 n, 256)
    std::uint64_t seed = 0;
};

struct RotationOutcome {
    bool hamiltonian = false;
    std::vector<Vertex> path;  // Hamilton path, or the longest path at the stall
    std::vector<Vertex> end_set;
    std::vector<std::vector<Vertex>> end_paths;  // one per END vertex
};

// Grows a path inside `block` on open edges of color c, keeping every cherry
// of that color whole. The start is fixed_end when given. Throws
// StageError(stage2) when the color class on the block is disconnected.
RotationOutcome restricted_rotation_extension(const SolverState& st, Color c, const std::vector<Vertex>& block,
                                              std::optional<Vertex> fixed_end, const RotationOptions& opt = {});

// Like restricted_rotation_extension, but at a stall opens reserve edges of
// `pool` one by one until the path is Hamiltonian. Throws StageError(stage2)
// when the pool runs dry.
std::vector<Vertex> extend_with_boosters(SolverState& st, Color c, const std::vector<Vertex>& block,
                                         std::optional<Vertex> fixed_end, int pool,
                                         const RotationOptions& opt = {});

// Path with exactly L edges starting at `start`, inside `region` on edges of
// color c (0 = any color). nullopt when none was found.
std::optional<std::vector<Vertex>> long_path_in_expander(const ColoredGraph& g, Color c,
                                                         const std::vector<Vertex>& region, Vertex start, int L,
                                                         std::uint64_t seed = 0);

// ---- short chains ------------------------------------------------------------

struct ChainSpec {
    Color color = 1;
    int size = 1;                 // vertices of the segment inside its region (m_j)
    std::vector<Vertex> region;   // where the segment lives
};

struct ShortChain {
    std::vector<Vertex> path;         // concatenated P_1 ... P_sigma
    std::vector<int> segment_start;   // index in path where each P_j begins
    std::vector<Vertex> starters;     // c_1-neighbours of the first vertex in the starter region
    Vertex terminal = kNoVertex;      // c_next-neighbour of the last vertex in next_region
};

// First segment has size-1 edges, the others `size` edges counting the
// junction edge. Throws StageError(stage3) on failure.
ShortChain build_short_chain(const SolverState& st, const std::vector<ChainSpec>& chain,
                             const std::vector<Vertex>& starter_region, Color next_color,
                             const std::vector<Vertex>& next_region, std::uint64_t seed = 0);

// ---- gluing ---------------------------------------------------------------------

struct BlockSpec {
    Color color = 1;
    std::vector<Vertex> vertices;
};

// Hamilton paths of consecutive blocks joined by junction edges of the next
// block's color. The first block starts at one of `entries`; the last one
// must end at a vertex joined to `closing_vertex` by an edge of `closing_color`.
// Junction edges may be opened from pool 0. Throws StageError(glue or stage2).
struct GlueOptions {
    int entry_tries = 4;
    int junction_budget = 0;  // pool-0 edges per junction; 0 = ceil(log^2 n)
    RotationOptions rotation;
};

std::vector<std::vector<Vertex>> glue_hamilton_paths(SolverState& st, const std::vector<BlockSpec>& blocks,
                                                     const std::vector<Vertex>& entries, Vertex closing_vertex,
                                                     Color closing_color, const GlueOptions& opt = {});

// ---- solver -------------------------------------------------------------------------

// automatic runs paper, then desk, then (small n) direct in every attempt.
enum class Strategy { paper, desk, direct, automatic };
const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

struct SolverConfig {
    double beta = 0.1;
    int restarts = 10;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::automatic;
    double n0_theta = 0.02;
    std::size_t end_cap = 0;  // 0 = auto
    bool use_layers = true;
    double omega = -1;  // layer split; < 0 = default
    // Layer tags from the generator; empty means random tagging.
    std::vector<std::uint8_t> layers;
    int direct_limit = 64;  // largest n for the direct pass under automatic
    int direct_tries = 8;   // random starts per attempt
    int exact_limit = 12;
    bool exact_fallback = true;
    std::function<void(const std::vector<Vertex>&, Color)> path_hook;
};

enum class SolveStatus { certificate, heuristic_failure, infeasible };
const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::heuristic_failure;
    std::optional<HamiltonCertificate> certificate;
    Stage failure_stage = Stage::none;  // stage of the last failed attempt
    std::string pipeline;  // "theorem1" or "theorem2"
    std::string method;    // what produced the certificate: paper, desk, direct, exact
    std::string reason;
    int attempts = 0;
    std::array<int, 5> stage_failures{};  // stage1, stage2, stage3, glue, exact
    std::size_t reserve_opened = 0;

    int exit_code() const;
};

// Sound reasons why no certificate exists; empty when none applies.
std::string infeasibility_reason(const ColoredGraph& g, const ProfileVector& m);

SolveResult solve(const ColoredGraph& g, const ProfileVector& m, const ColorWeights& alpha,
                  const SolverConfig& config = {});

// Undirected projection on pairs with exactly one arc, solved and oriented
// along the unique arcs.
ColoredGraph project_digraph(const ColoredDigraph& d);
SolveResult solve_digraph(const ColoredDigraph& d, const ProfileVector& m, const ColorWeights& alpha,
                          const SolverConfig& config = {});

}  // namespace hcp
