#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

// Deterministic randomness. Every stochastic routine in the project takes an
// explicit engine or a 64-bit seed; per-run seeds are derived from
// (master seed, instance id, run index) so batch results do not depend on
// scheduling order or thread count.

namespace svmc {

using Rng = std::mt19937_64;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// splitmix64 finalizer, used to decorrelate seed material.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stable per-run seed; identical on every platform and thread layout.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view instance_id,
                                     std::uint64_t run_index) {
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ fnv1a64(instance_id));
    return mix64(s ^ run_index);
}

/// Uniform in [0, 1) with 53 random bits. uniform_real_distribution is
/// implementation-defined, so it is not used anywhere in this project.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform angle in [0, 2*pi).
inline double uniform_angle(Rng& rng) { return kTwoPi * uniform01(rng); }

}  // namespace svmc
