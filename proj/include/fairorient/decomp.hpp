#pragma once

// Tree decompositions of the underlying simple graph (parallel edges
// collapse), their nice normal form, and the PACE .td text format.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairorient/core.hpp"

namespace fairorient::decomp {

struct TreeDecomposition {
    std::size_t n = 0;                    // vertices of the decomposed graph
    std::vector<std::vector<Vertex>> bags;  // in file order
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_edges;

    /// Largest bag size minus one; -1 without bags.
    int width() const;
    friend bool operator==(const TreeDecomposition &, const TreeDecomposition &) = default;
};

struct Validation {
    bool ok = true;
    int condition = 0;  // 0 structure, 1 coverage, 2 edges, 3 connectivity
    std::string detail;
};

/// Structure (a tree over the bags, ids in range) is checked first, then
/// conditions 1-3; the first failure is reported.
Validation validate(const Instance &inst, const TreeDecomposition &td);

/// Bag of v is v plus its later neighbors at elimination time; the bag hangs
/// below the bag of its first-eliminated later neighbor, and component roots
/// hang below the next bag in the order.
TreeDecomposition from_elimination_order(const Instance &inst, const std::vector<Vertex> &order);

/// Min-fill elimination, ties to the smallest vertex id.
std::vector<Vertex> min_fill_order(const Instance &inst);
TreeDecomposition heuristic_decomposition(const Instance &inst);

/// Optimal elimination order by dynamic programming over vertex subsets.
std::vector<Vertex> exact_elimination_order(const Instance &inst, std::size_t max_n = 16);
int exact_treewidth(const Instance &inst, std::size_t max_n = 16);

enum class NodeType : std::uint8_t { Leaf, Introduce, Forget, Join };
const char *to_string(NodeType t);

struct NiceNode {
    NodeType type = NodeType::Leaf;
    Vertex vertex = kNoVertex;          // Introduce / Forget
    std::vector<Vertex> bag;            // ascending
    std::vector<std::uint32_t> children;
};

/// Children always precede their parent; the last node is the root.
struct NiceDecomposition {
    std::size_t n = 0;
    std::vector<NiceNode> nodes;

    std::uint32_t root() const { return static_cast<std::uint32_t>(nodes.size() - 1); }
    int width() const;
};

/// `root` picks the bag the nice tree is rooted at (default bag 0).
NiceDecomposition make_nice(const Instance &inst, const TreeDecomposition &td,
                            std::optional<std::uint32_t> root = std::nullopt);

/// Node typing, one Forget per vertex, empty root, and for every edge the
/// first-forgotten endpoint's Forget bag holds the other endpoint.
Validation validate_nice(const Instance &inst, const NiceDecomposition &nd);

TreeDecomposition read_pace(std::istream &in);
void write_pace(std::ostream &out, const TreeDecomposition &td);
TreeDecomposition read_pace_file(const std::string &path);

}  // namespace fairorient::decomp
