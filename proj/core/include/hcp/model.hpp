#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcp {

using Vertex = std::uint32_t;
using Color = std::uint16_t;  // 1-based

// Bad arguments (profile does not sum to n, alpha not normalized, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dimension mismatch between a certificate and the graph it is checked against.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Color color = 1;
    bool operator==(const Edge&) const = default;
};

struct Neighbor {
    Vertex vertex;
    Color color;
    std::uint32_t edge;  // index into edges()
};

class ColorWeights {
public:
    ColorWeights() = default;
    explicit ColorWeights(std::vector<double> alpha);

    static ColorWeights uniform(int r);

    int r() const { return static_cast<int>(alpha_.size()); }
    double operator[](int i) const { return alpha_[i]; }  // 0-based index
    double of(Color c) const { return alpha_[c - 1]; }
    double min() const;
    const std::vector<double>& values() const { return alpha_; }

    // Maps u in [0,1) to a color by inverse CDF.
    Color sample(double u) const;

private:
    std::vector<double> alpha_;
};

class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(int n, int r, std::vector<Edge> edges);

    int n() const { return n_; }
    int r() const { return r_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    struct Range {
        const Neighbor* b;
        const Neighbor* e;
        const Neighbor* begin() const { return b; }
        const Neighbor* end() const { return e; }
        std::size_t size() const { return static_cast<std::size_t>(e - b); }
    };
    // Sorted by neighbor index.
    Range neighbors(Vertex v) const {
        return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
    }
    int degree(Vertex v) const { return static_cast<int>(offset_[v + 1] - offset_[v]); }
    int color_degree(Vertex v, Color c) const;

    bool has_edge(Vertex u, Vertex v) const;
    // 0 when absent.
    Color color_of(Vertex u, Vertex v) const;
    std::optional<std::uint32_t> edge_index(Vertex u, Vertex v) const;

    // Rebuilds the adjacency from the edge list and compares.
    bool adjacency_consistent() const;

    // Graph with vertex v renamed to perm[v].
    ColoredGraph relabeled(const std::vector<Vertex>& perm) const;

private:
    int n_ = 0;
    int r_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offset_;
    std::vector<Neighbor> adj_;
};

struct Arc {
    Vertex from = 0;
    Vertex to = 0;
    Color color = 1;
    bool operator==(const Arc&) const = default;
};

class ColoredDigraph {
public:
    ColoredDigraph() = default;
    ColoredDigraph(int n, int r, std::vector<Arc> arcs);

    int n() const { return n_; }
    int r() const { return r_; }
    std::size_t arc_count() const { return arcs_.size(); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool has_arc(Vertex from, Vertex to) const;
    Color color_of(Vertex from, Vertex to) const;
    int out_degree(Vertex v) const { return static_cast<int>(offset_[v + 1] - offset_[v]); }

private:
    int n_ = 0;
    int r_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::uint32_t> offset_;
    std::vector<std::pair<Vertex, Color>> out_;
};

using ProfileVector = std::vector<int>;

int profile_sum(const ProfileVector& m);
void validate_profile(const ProfileVector& m, int n, int r);
// Every part at least ceil(beta*n).
bool in_M_beta(const ProfileVector& m, int n, double beta);
int beta_floor(int n, double beta);
std::string profile_to_string(const ProfileVector& m);
ProfileVector parse_profile(const std::string& s);

struct HamiltonCertificate {
    std::vector<Vertex> order;
    // boundaries[i] = index of the first cyclic edge of segment i, where
    // edge k joins order[k] and order[(k+1) % n].
    std::vector<int> boundaries;
    bool operator==(const HamiltonCertificate&) const = default;
};

enum class Violation {
    none,
    not_permutation,
    missing_edge,
    boundary_mismatch,
    wrong_color,
};

const char* to_string(Violation v);

struct VerificationReport {
    bool ok = true;
    Violation violation = Violation::none;
    int segment = -1;  // 0-based segment of the failure
    int position = -1; // cyclic edge index or order index
    Vertex u = 0, v = 0;
    std::string message;

    explicit operator bool() const { return ok; }
};

// Throws StructuralError on dimension mismatch.
VerificationReport verify_certificate(const ColoredGraph& g, const ProfileVector& m,
                                      const HamiltonCertificate& cert);
VerificationReport verify_directed_certificate(const ColoredDigraph& d, const ProfileVector& m,
                                               const HamiltonCertificate& cert);

// Boundaries for a cyclic order whose color word starts with segment 0 at edge `start`.
HamiltonCertificate certificate_from_cycle(std::vector<Vertex> order, const ProfileVector& m,
                                           int start = 0);

// Colors of the cyclic edges of an order.
std::vector<Color> color_word(const ColoredGraph& g, const std::vector<Vertex>& order);

// Compositions of n into r parts, each >= ceil(beta*n), in lexicographic order.
class ProfileSpace {
public:
    ProfileSpace(int n, int r, double beta = 0.0);

    class iterator {
    public:
        using value_type = ProfileVector;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        const ProfileVector& operator*() const { return cur_; }
        const ProfileVector* operator->() const { return &cur_; }
        iterator& operator++();
        iterator operator++(int) {
            auto t = *this;
            ++*this;
            return t;
        }
        bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || cur_ == o.cur_); }

    private:
        friend class ProfileSpace;
        ProfileVector cur_;
        int lo_ = 0;
        bool done_ = true;
    };

    iterator begin() const;
    iterator end() const { return iterator{}; }

    // Stars and bars count; 0 when beta > 1/r.
    std::uint64_t size() const;
    std::vector<ProfileVector> to_vector() const;

private:
    int n_, r_, lo_;
};

std::uint64_t binomial(int n, int k);

}  // namespace hcp
