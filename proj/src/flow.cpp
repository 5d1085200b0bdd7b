#include "fairorient/flow.hpp"

#include <algorithm>
#include <limits>

namespace fairorient::flow {

MaxFlow::MaxFlow(std::size_t nodes) : out_(nodes), level_(nodes), next_(nodes) {}

std::uint32_t MaxFlow::add_arc(std::uint32_t from, std::uint32_t to, std::uint64_t cap)
{
    const auto id = static_cast<std::uint32_t>(arcs_.size());
    arcs_.push_back({to, cap});
    arcs_.push_back({from, 0});
    original_.push_back(cap);
    original_.push_back(0);
    out_.at(from).push_back(id);
    out_.at(to).push_back(id + 1);
    return id;
}

std::uint64_t MaxFlow::flow_on(std::uint32_t arc) const
{
    return original_.at(arc) - arcs_.at(arc).cap;
}

bool MaxFlow::levels(std::uint32_t s, std::uint32_t t)
{
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::uint32_t> queue{s};
    level_[s] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const std::uint32_t v = queue[q];
        for (std::uint32_t a : out_[v]) {
            if (arcs_[a].cap == 0 || level_[arcs_[a].to] >= 0)
                continue;
            level_[arcs_[a].to] = level_[v] + 1;
            queue.push_back(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
}

std::uint64_t MaxFlow::push(std::uint32_t v, std::uint32_t t, std::uint64_t limit)
{
    if (v == t)
        return limit;
    for (std::size_t &i = next_[v]; i < out_[v].size(); ++i) {
        const std::uint32_t a = out_[v][i];
        Arc &arc = arcs_[a];
        if (arc.cap == 0 || level_[arc.to] != level_[v] + 1)
            continue;
        const std::uint64_t got = push(arc.to, t, std::min(limit, arc.cap));
        if (got > 0) {
            arc.cap -= got;
            arcs_[a ^ 1].cap += got;
            return got;
        }
    }
    return 0;
}

std::uint64_t MaxFlow::run(std::uint32_t source, std::uint32_t sink)
{
    std::uint64_t total = 0;
    while (levels(source, sink)) {
        std::fill(next_.begin(), next_.end(), 0);
        while (std::uint64_t got = push(source, sink, std::numeric_limits<std::uint64_t>::max())) {
            total += got;
            ++augmentations_;
        }
    }
    return total;
}

UdcgoResult udcgo_feasible(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                           std::span<const std::uint64_t> caps)
{
    if (caps.size() != n)
        throw InputError("udcgo: one cap per vertex required");
    const std::size_t m = edges.size();
    // Layout: source, sink, one node per edge, one node per vertex.
    const std::uint32_t s = 0, t = 1;
    auto edge_node = [](std::size_t e) { return static_cast<std::uint32_t>(2 + e); };
    auto vertex_node = [m](Vertex i) { return static_cast<std::uint32_t>(2 + m + i); };
    MaxFlow mf(2 + m + n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> choice(m);
    for (std::size_t e = 0; e < m; ++e) {
        const auto [a, b] = edges[e];
        if (a >= n || b >= n || a == b)
            throw InputError("udcgo: bad edge");
        mf.add_arc(s, edge_node(e), 1);
        choice[e].first = mf.add_arc(edge_node(e), vertex_node(a), 1);
        choice[e].second = mf.add_arc(edge_node(e), vertex_node(b), 1);
    }
    for (Vertex i = 0; i < n; ++i)
        mf.add_arc(vertex_node(i), t, std::min<std::uint64_t>(caps[i], m));

    UdcgoResult result;
    const std::uint64_t value = mf.run(s, t);
    result.augmentations = mf.augmentations();
    result.feasible = value == m;
    if (!result.feasible)
        return result;
    result.head.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
        // A unit through edge-node -> a charges the edge to a as an out-edge.
        result.head[e] = mf.flow_on(choice[e].first) ? edges[e].second : edges[e].first;
    }
    return result;
}

}  // namespace fairorient::flow
