#pragma once

// Linear-time EF decision, construction and minimum charity for instances
// whose values are all 0 or 1.
//
// Zero-zero edges are dropped, one-zero edges go to the endpoint that values
// them, and the remaining edges (valued 1 by both endpoints) form the prime
// graph. An EF orientation exists iff every connected component of the prime
// graph either is a single vertex, touches a forced edge, holds an even
// nonempty bundle of parallel edges, or contains a circuit through at least
// three vertices. Certificates are grown outward from a seed with the
// "happy vertex" rule: a vertex that already holds a 1-valued good from
// outside a bundle can split that bundle floor/ceil in its neighbor's favor.

#include <array>
#include <optional>
#include <vector>

#include "fairorient/core.hpp"

namespace fairorient::binary {

/// Parallel edges of the prime graph between a < b.
struct Bundle {
    Vertex a = 0;
    Vertex b = 0;
    std::uint32_t first = 0;  // offset into PrimeGraph::bundle_edges
    std::uint32_t count = 0;
};

struct PrimeGraph {
    std::size_t n = 0;
    std::vector<EdgeId> prime;      // valued 1 by both endpoints
    std::vector<EdgeId> forced;     // valued by exactly one endpoint
    std::vector<EdgeId> discarded;  // valued by neither
    std::vector<Bundle> bundles;    // sorted by (a, b)
    std::vector<EdgeId> bundle_edges;
    std::vector<std::uint32_t> adj_offsets;  // per vertex, into adj
    std::vector<std::uint32_t> adj;          // bundle ids incident to each vertex
    std::vector<std::uint8_t> forced_in;     // vertex receives a forced 1-valued edge

    std::span<const std::uint32_t> bundles_at(Vertex i) const
    {
        return std::span<const std::uint32_t>(adj).subspan(adj_offsets[i], adj_offsets[i + 1] - adj_offsets[i]);
    }
    std::span<const EdgeId> edges_of(const Bundle &b) const
    {
        return std::span<const EdgeId>(bundle_edges).subspan(b.first, b.count);
    }
};

PrimeGraph preprocess_binary(const Instance &inst);

enum class Property { Circuit, ForcedEdge, EvenBundle, Singleton, None };
enum class Repair { None, RemoveOneEdge, RemoveAllEdges };

const char *to_string(Property p);

struct ComponentDiagnosis {
    std::vector<Vertex> vertices;  // ascending
    Property property = Property::None;
    Repair repair = Repair::None;
    // EvenBundle: the bundle to split. RemoveOneEdge: the bundle losing an edge.
    std::optional<std::uint32_t> bundle;
    // Circuit: a simple cycle of length >= 3 as consecutive vertices, with
    // cycle_bundles[t] joining cycle[t] and cycle[t + 1]. Empty when the
    // circuit is instead the 4-edge trail i => pivot => k over the two
    // bundles in trail_bundles.
    std::vector<Vertex> cycle;
    std::vector<std::uint32_t> cycle_bundles;
    std::optional<Vertex> pivot;
    std::array<std::uint32_t, 2> trail_bundles{};
    std::uint32_t prime_edges = 0;
};

/// Components in order of their smallest vertex. Properties are tested in
/// the order Singleton, ForcedEdge, EvenBundle, Circuit.
std::vector<ComponentDiagnosis> diagnose_components(const PrimeGraph &pg);

/// A partial assignment plus the set of edges it decides.
struct Seed {
    PartialOrientation orientation;
    std::vector<std::uint8_t> decided;
};

/// Forced edges, zero-zero edges (to u), repairs and one seed per component
/// that does not touch a forced edge.
Seed seed_orientation(const Instance &inst, const PrimeGraph &pg, const std::vector<ComponentDiagnosis> &diag);

struct PropagationStats {
    std::uint64_t vertex_pops = 0;
    std::uint64_t bundle_scans = 0;
};

/// Orients every undecided prime edge; throws InternalError when a seed
/// leaves some bundle unreachable.
PartialOrientation propagate_happy(const Instance &inst, const PrimeGraph &pg, Seed seed,
                                   PropagationStats *stats = nullptr);

/// Decision: certificate only when the answer is yes. MinCharity: always a
/// certificate with exactly min_charity unoriented edges.
SolveReport solve_binary(const Instance &inst, Goal goal, bool want_certificate = true);

}  // namespace fairorient::binary
