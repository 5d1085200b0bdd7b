#pragma once

// Instance generators that encode SAT, 2P2N-3SAT, Partition and Target
// Outdegree Orientation as EF orientation, and EF orientation as EFX.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "fairorient/core.hpp"

namespace fairorient::reductions {

/// Literals are nonzero, DIMACS sign convention, variables 1..variables.
struct Cnf {
    std::size_t variables = 0;
    std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs(std::istream &in);
Cnf read_dimacs_file(const std::string &path);
void write_dimacs(std::ostream &out, const Cnf &cnf);

/// Per variable x with w = max(#positive, #negative occurrences): t-f of
/// weight w, w unit copies hanging off each of t and f, the l-th positive
/// (negative) occurrence in clause order wired to copy l of t (f), and a
/// unit triangle on every copy left without a clause. Variables that occur
/// nowhere are omitted. Vertex order: per variable t, f, t copies, f copies;
/// then clause vertices; then triangle vertices.
Instance sat_to_ef(const Cnf &cnf);

/// Every variable twice positive and twice negative, clauses of three
/// distinct variables. Vertices t_1, f_1, ..., t_n, f_n, then one per clause.
Instance sat2p2n_to_ef(const Cnf &cnf);

enum class PartitionMode { Simple, TwoVertex };

/// Simple: u1, u2, l1, l2, then one vertex per item. An odd total is refused.
Instance partition_to_ef(const std::vector<Weight> &items, PartitionMode mode);

struct TooInstance {
    std::size_t n = 0;
    std::vector<std::tuple<Vertex, Vertex, Weight>> edges;  // simple graph, one value per edge
    std::vector<Weight> capacity;
};

/// Requires value(e) <= min capacity of its endpoints and total value equal
/// to total capacity. Adds a universal vertex a (id n) and a leaf b (id n+1).
Instance too_to_ef(const TooInstance &too);

struct NormalizedToo {
    bool trivially_no = false;
    TooInstance reduced;
    std::vector<std::pair<std::size_t, Vertex>> forced;  // (input edge index, receiver)
};

/// Orients every edge worth more than one endpoint's capacity toward the
/// other endpoint until none is left, then checks the total.
NormalizedToo normalize_too(const TooInstance &too);

/// Adds d1 (id n) and d2 (id n+1), zero-zero edges v-d1 and v-d2 for every
/// original v in order, then d1-d2 valued 1 by both.
Instance ef_to_efx(const Instance &inst);

}  // namespace fairorient::reductions
