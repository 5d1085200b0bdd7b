#pragma once

// Max-flow by shortest augmenting paths (Dinic phases) and the
// upper-degree-constrained orientation check built on it.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fairorient/core.hpp"

namespace fairorient::flow {

class MaxFlow {
public:
    explicit MaxFlow(std::size_t nodes);

    /// Returns the arc id; its flow is readable after run().
    std::uint32_t add_arc(std::uint32_t from, std::uint32_t to, std::uint64_t cap);
    std::uint64_t run(std::uint32_t source, std::uint32_t sink);
    std::uint64_t flow_on(std::uint32_t arc) const;
    std::uint64_t augmentations() const noexcept { return augmentations_; }

private:
    struct Arc {
        std::uint32_t to;
        std::uint64_t cap;
    };
    bool levels(std::uint32_t s, std::uint32_t t);
    std::uint64_t push(std::uint32_t v, std::uint32_t t, std::uint64_t limit);

    std::vector<Arc> arcs_;  // arc a and a ^ 1 are a residual pair
    std::vector<std::uint64_t> original_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
    std::uint64_t augmentations_ = 0;
};

struct UdcgoResult {
    bool feasible = false;
    std::vector<Vertex> head;  // per edge, the endpoint it points to; empty when infeasible
    std::uint64_t augmentations = 0;
};

/// Is there an orientation of `edges` with out-degree(i) <= caps[i] for all i?
UdcgoResult udcgo_feasible(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                           std::span<const std::uint64_t> caps);

}  // namespace fairorient::flow
