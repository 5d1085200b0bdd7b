#pragma once

// Shared test helpers. The naive_* functions recompute envy straight from
// the definitions, without any code from the library, so library results
// can be checked against something independent.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "fairorient/core.hpp"

namespace test {

using fairorient::Assignment;
using fairorient::Edge;
using fairorient::Fairness;
using fairorient::Instance;
using fairorient::PartialOrientation;
using fairorient::Weight;

struct E {
    unsigned u, v;
    Weight wu, wv;
};

inline Instance make(std::size_t n, std::initializer_list<E> es)
{
    std::vector<Edge> edges;
    for (const E &e : es)
        edges.push_back(Edge{e.u, e.v, e.wu, e.wv});
    return Instance(n, std::move(edges));
}

inline PartialOrientation orient(std::initializer_list<Assignment> a)
{
    return PartialOrientation(std::vector<Assignment>(a));
}

constexpr Assignment U = Assignment::ToU, V = Assignment::ToV, C = Assignment::Charity;

// holder of edge e, or -1
inline long holder(const Instance &inst, const PartialOrientation &o, std::size_t e)
{
    const Edge &ed = inst.edges()[e];
    switch (o.assignments()[e]) {
    case Assignment::ToU: return ed.u;
    case Assignment::ToV: return ed.v;
    default: return -1;
    }
}

inline Weight val(const Edge &e, std::size_t i)
{
    if (e.u == i)
        return e.w_u;
    if (e.v == i)
        return e.w_v;
    return 0;
}

/// Straight from the definitions: v_i(X_i) < v_i(X_j), or for EFX
/// v_i(X_i) < v_i(X_j \ g) for some g in X_j.
inline bool naive_fair(const Instance &inst, const PartialOrientation &o, Fairness f)
{
    const std::size_t n = inst.vertex_count(), m = inst.edge_count();
    for (std::size_t i = 0; i < n; ++i) {
        Weight own = 0;
        for (std::size_t e = 0; e < m; ++e)
            if (holder(inst, o, e) == static_cast<long>(i))
                own += val(inst.edges()[e], i);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            Weight other = 0;
            Weight least = std::numeric_limits<Weight>::max();
            bool any = false;
            for (std::size_t e = 0; e < m; ++e) {
                if (holder(inst, o, e) != static_cast<long>(j))
                    continue;
                const Weight w = val(inst.edges()[e], i);
                other += w;
                least = std::min(least, w);
                any = true;
            }
            if (f == Fairness::EF && own < other)
                return false;
            if (f == Fairness::EFX && any && own < other - least)
                return false;
        }
    }
    return true;
}

/// Minimum charity over all 3^m partial orientations, by plain counting.
inline std::size_t naive_min_charity(const Instance &inst, Fairness f)
{
    const std::size_t m = inst.edge_count();
    std::uint64_t total = 1;
    for (std::size_t e = 0; e < m; ++e)
        total *= 3;
    std::size_t best = m;
    std::vector<Assignment> a(m);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::size_t charity = 0;
        for (std::size_t e = 0; e < m; ++e) {
            a[e] = static_cast<Assignment>(c % 3);
            c /= 3;
            charity += a[e] == Assignment::Charity;
        }
        if (charity < best && naive_fair(inst, PartialOrientation(a), f))
            best = charity;
    }
    return best;
}

inline bool naive_exists(const Instance &inst, Fairness f)
{
    const std::size_t m = inst.edge_count();
    std::vector<Assignment> a(m);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
        for (std::size_t e = 0; e < m; ++e)
            a[e] = (code >> e) & 1 ? Assignment::ToV : Assignment::ToU;
        if (naive_fair(inst, PartialOrientation(a), f))
            return true;
    }
    return false;
}

}  // namespace test
