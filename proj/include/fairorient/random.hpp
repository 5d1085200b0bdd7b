#pragma once

// Seeded instance generator. Draws go through mt19937_64 and a rejection
// step of our own, so a seed gives the same instance on every platform.

#include <cstdint>
#include <optional>
#include <random>

#include "fairorient/core.hpp"

namespace fairorient::gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool coin() { return (eng_() >> 63) != 0; }

private:
    std::mt19937_64 eng_;
};

struct RandomSpec {
    std::size_t n = 2;
    std::size_t m = 1;
    Weight max_weight = 1;
    bool simple = false;
    bool symmetric = false;
    bool no_zero_zero = false;
    // Edges drawn after this many heavy ones get values in {0, 1}.
    std::optional<std::size_t> max_heavy;
    std::uint64_t seed = 1;
};

/// Never emits loops. Throws InputError when the request cannot be met
/// (n < 2 with edges, more simple edges than pairs, zero-zero forbidden
/// with max_weight 0).
Instance random_instance(const RandomSpec &spec);

}  // namespace fairorient::gen
