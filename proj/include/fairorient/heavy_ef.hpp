#pragma once

// EF decision on simple graphs by branching over the orientations of heavy
// edges (valued >= 2 by some endpoint). Once those are fixed every remaining
// edge is valued 1 by both endpoints, and completing the branch is an
// orientation problem with an upper bound on each vertex's out-degree.

#include <cstdint>
#include <optional>
#include <vector>

#include "fairorient/core.hpp"

namespace fairorient::heavy {

struct Classification {
    std::vector<EdgeId> heavy;     // branch bit j orients heavy[j]: 0 = ToU, 1 = ToV
    std::vector<EdgeId> residual;  // valued (1, 1)
    std::vector<EdgeId> forced;    // one endpoint values it 0
    std::vector<EdgeId> dropped;   // zero-zero
    PartialOrientation base;       // forced edges oriented, dropped edges ToU, the rest Charity
};

/// Throws UnsupportedInstance on multigraphs.
Classification classify_heavy(const Instance &inst);

/// Gray code of a branch index.
inline std::uint64_t branch_code(std::uint64_t index) { return index ^ (index >> 1); }

struct BranchState {
    PartialOrientation fixed;  // base plus the heavy edges of this branch
    std::vector<Weight> revenue;
    std::vector<Weight> demand;
    std::vector<std::uint32_t> unoriented_degree;

    /// Out-degree caps of the residual orientation problem, or nothing when
    /// some vertex's deficit already exceeds its unoriented degree.
    std::optional<std::vector<std::uint64_t>> caps() const;
};

BranchState branch_state(const Instance &inst, const Classification &cls, std::uint64_t code);

struct Options {
    bool parallel = true;
    int threads = 0;               // 0: OpenMP default
    std::size_t max_heavy = 40;    // refuse beyond 2^max_heavy branches
    bool incremental = true;       // false: fresh max-flow on every branch
};

/// Branches are scanned in Gray-code order by index; the certificate comes
/// from the feasible branch with the smallest index. Goal::MinCharity is
/// refused.
SolveReport solve_heavy(const Instance &inst, Goal goal = Goal::Decision, const Options &opt = {});

/// Serial scan running a fresh max-flow on every surviving branch.
SolveReport solve_heavy_reference(const Instance &inst);

}  // namespace fairorient::heavy
