#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "hcp/model.hpp"

namespace hcp {

struct OracleLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    int limit = 12;
    bool override_limit = false;
};

struct ProfileSet {
    int n = 0;
    int r = 0;
    std::uint64_t graph_hash = 0;
    std::set<ProfileVector> profiles;

    bool contains(const ProfileVector& m) const { return profiles.count(m) != 0; }
    bool empty() const { return profiles.empty(); }
    std::size_t size() const { return profiles.size(); }
};

std::uint64_t graph_hash(const ColoredGraph& g);

// Calls visit(order) once per Hamilton cycle; order starts at 0 and
// order[1] < order[n-1]. Returning false from visit stops the search.
// Returns the number of cycles visited.
std::uint64_t enumerate_hamilton_cycles(const ColoredGraph& g,
                                        const std::function<bool(const std::vector<Vertex>&)>& visit,
                                        OracleOptions opt = {});

std::vector<std::vector<Vertex>> hamilton_cycles(const ColoredGraph& g, OracleOptions opt = {});

// Profiles realizable by one cyclic color word, by scanning all rotations of
// both traversal directions. Result has at most one element.
std::set<ProfileVector> profiles_of_cycle(const std::vector<Color>& word, int r);

ProfileSet exact_hcp(const ColoredGraph& g, OracleOptions opt = {});

// Profile-directed exhaustive search: a certificate for m, or nullopt when
// none exists.
std::optional<HamiltonCertificate> exact_certificate(const ColoredGraph& g, const ProfileVector& m,
                                                     OracleOptions opt = {});

}  // namespace hcp
