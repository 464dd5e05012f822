#pragma once

#include <cstdint>
#include <limits>

namespace hcp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based draw keyed by (seed, index, stage). Two keys that differ in any
// component give independent-looking outputs, so pairs can be sampled in any order.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t index, std::uint64_t stage = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
    h = splitmix64(h ^ (stage * 0x13198a2e03707344ULL + 0xa4093822299f31d0ULL));
    return splitmix64(h ^ index);
}

// Uniform in [0,1) with 53 bits.
inline double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * (1.0 / 9007199254740992.0);
}

inline double derive_unit(std::uint64_t seed, std::uint64_t index, std::uint64_t stage = 0) {
    return to_unit(derive(seed, index, stage));
}

// Small sequential generator for the solver's own choices; satisfies
// UniformRandomBitGenerator so it plugs into <algorithm>.
class Rng {
public:
    using result_type = std::uint64_t;
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double unit() { return to_unit((*this)()); }
    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t pair_index(std::uint64_t n, std::uint64_t u, std::uint64_t v) {
    if (u > v) { auto t = u; u = v; v = t; }
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

}  // namespace hcp
