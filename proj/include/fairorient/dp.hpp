#pragma once

// Minimum charity for EF and EFX by dynamic programming over a nice tree
// decomposition. A state stores, per bag vertex, its clamped revenue and
// demand (plus three flags for EFX) together with the charity spent so far;
// only the cheapest charity per key is kept. Edges are oriented at the
// Forget node of their first-forgotten endpoint, one bag neighbor at a time.

#include <cstdint>
#include <vector>

#include "fairorient/core.hpp"
#include "fairorient/decomp.hpp"

namespace fairorient::dp {

inline constexpr std::uint16_t kNone = 0xFFFF;  // min over an empty part

/// One achievable outcome of orienting the edges shared by i and j.
struct BundleEntry {
    std::uint16_t a1 = 0;  // v_i(part to i)
    std::uint16_t a2 = 0;  // v_i(part to j)
    std::uint16_t b1 = 0;  // v_j(part to j)
    std::uint16_t b2 = 0;  // v_j(part to i)
    std::uint16_t m1 = kNone;  // min v_i over the part to j (EFX only)
    std::uint16_t m2 = kNone;  // min v_j over the part to i (EFX only)
    std::uint32_t charity = 0;
    std::vector<Assignment> witness;  // per edge of the table, cheapest realization

    bool to_i() const noexcept { return m2 != kNone; }
    bool to_j() const noexcept { return m1 != kNone; }
};

struct BundleTable {
    Vertex i = 0;
    Vertex j = 0;
    std::vector<EdgeId> edges;
    std::vector<BundleEntry> entries;  // distinct value keys, cheapest charity each
};

/// For EF the key omits m1/m2 (and they stay kNone). Throws RefusalError
/// when a bundle value does not fit the 16-bit state fields.
BundleTable build_bundle_table(const Instance &inst, Vertex i, Vertex j, Fairness fairness);

struct Options {
    bool dominance = false;               // drop dominated states at every node
    std::uint64_t max_states = 50'000'000;  // across all live layers
};

/// Zero-zero edges are removed before the run and handed to u afterward.
SolveReport solve_ef_mc(const Instance &inst, const decomp::NiceDecomposition &nd, const Options &opt = {});

/// Zero-zero edges are kept: they matter for strong envy.
SolveReport solve_efx_mc(const Instance &inst, const decomp::NiceDecomposition &nd, const Options &opt = {});

}  // namespace fairorient::dp
