#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace citywalk {

// 64-bit FNV-1a. Used to derive per-episode/per-view seeds from stable
// identifiers so results do not depend on scheduling or call order.
inline std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    // splitmix64-style mix
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Deterministic RNG. std::mt19937_64 output is pinned by the standard;
// the distribution helpers below avoid std::*_distribution, whose output
// is implementation-defined and would break cross-platform reproducibility.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    /// Bernoulli trial with success probability p.
    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace citywalk
