// agon: deterministic RNG helpers
// SPDX-License-Identifier: Apache-2.0

#ifndef AGON_RNG_HPP
#define AGON_RNG_HPP

#include <cstdint>

namespace agon {

// SplitMix64. Self-contained so simulation results do not depend on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) without modulo bias worth caring about here.
    std::uint64_t below(std::uint64_t bound) {
        return bound ? next_u64() % bound : 0;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return (next_u64() >> 11) * (1.0 / 9007199254740992.0); }

    // Derive an independent stream; streams with distinct salts do not collide.
    Rng fork(std::uint64_t salt) {
        std::uint64_t s = next_u64();
        return Rng(s ^ (salt * 0xD1B54A32D192ED03ull));
    }

private:
    std::uint64_t state_;
};

} // namespace agon

#endif // AGON_RNG_HPP
