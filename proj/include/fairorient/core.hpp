#pragma once

// Instance model for fair orientation problems: agents are vertices of a
// loopless multigraph, goods are its edges, and every edge carries one
// nonnegative integer value per endpoint.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairorient {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::uint64_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Malformed input (ids out of range, loops, overflow, wrong weight class).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The request is well-formed but exceeds a configured cap.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The instance is outside the class an algorithm is proven correct for.
class UnsupportedInstance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// a + b, throwing InputError on 64-bit overflow.
Weight checked_add(Weight a, Weight b);

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Weight w_u = 0;  // value of the edge to u
    Weight w_v = 0;  // value of the edge to v

    Weight value_to(Vertex i) const noexcept { return i == u ? w_u : (i == v ? w_v : 0); }
    bool incident(Vertex i) const noexcept { return i == u || i == v; }
    Vertex other(Vertex i) const noexcept { return i == u ? v : u; }
    bool zero_zero() const noexcept { return w_u == 0 && w_v == 0; }

    friend bool operator==(const Edge &, const Edge &) = default;
};

enum class Fairness : std::uint8_t { EF, EFX };

const char *to_string(Fairness f);

/// Immutable after construction. Edge ids are positions in the edge list.
class Instance {
public:
    Instance() = default;
    Instance(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge &edge(EdgeId e) const { return edges_.at(e); }

    /// Ids of the edges incident to i, ascending.
    std::span<const EdgeId> incident(Vertex i) const;

    bool is_simple() const;
    bool is_symmetric() const noexcept;
    bool is_binary() const noexcept;
    Weight max_weight() const noexcept;

    /// Largest total value an agent assigns to the edges it shares with a
    /// single neighbor; 0 for the edgeless graph.
    Weight max_shared_weight() const;

    void check_vertex(Vertex i) const;
    void check_edge(EdgeId e) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<EdgeId> incidence_;
};

enum class Assignment : std::uint8_t { ToU = 0, ToV = 1, Charity = 2 };

/// Per-edge assignment to an endpoint or to charity.
class PartialOrientation {
public:
    PartialOrientation() = default;
    explicit PartialOrientation(std::size_t m, Assignment fill = Assignment::Charity)
        : assignment_(m, fill) {}
    explicit PartialOrientation(std::vector<Assignment> a) : assignment_(std::move(a)) {}

    std::size_t size() const noexcept { return assignment_.size(); }
    Assignment operator[](EdgeId e) const { return assignment_[e]; }
    Assignment at(EdgeId e) const { return assignment_.at(e); }
    void set(EdgeId e, Assignment a) { assignment_.at(e) = a; }
    std::span<const Assignment> assignments() const noexcept { return assignment_; }

    std::size_t charity_count() const noexcept;

    /// The agent holding edge e, or kNoVertex when e went to charity.
    Vertex holder(const Instance &inst, EdgeId e) const;

    /// Assign e to agent i (must be an endpoint).
    void give(const Instance &inst, EdgeId e, Vertex i);

    friend bool operator==(const PartialOrientation &, const PartialOrientation &) = default;

private:
    std::vector<Assignment> assignment_;
};

/// v_i(bundle); edges not incident to i contribute 0.
Weight bundle_value(const Instance &inst, Vertex i, std::span<const EdgeId> bundle);

/// Edge ids held by agent i under o, ascending.
std::vector<EdgeId> bundle_of(const Instance &inst, const PartialOrientation &o, Vertex i);

bool envies(const Instance &inst, const PartialOrientation &o, Vertex i, Vertex j);
bool strongly_envies(const Instance &inst, const PartialOrientation &o, Vertex i, Vertex j);

struct VerifyResult {
    bool ok = true;
    std::size_t charity = 0;
    std::optional<std::pair<Vertex, Vertex>> witness;  // (envier, enviee)
};

/// Checks every ordered pair; the witness is the lexicographically first
/// violating (envier, enviee) pair.
VerifyResult verify(const Instance &inst, const PartialOrientation &o, Fairness fairness);

enum class Goal : std::uint8_t { Decision, MinCharity };

struct SolveReport {
    std::string algorithm;
    Fairness fairness = Fairness::EF;
    bool decision = false;
    std::optional<std::uint64_t> min_charity;
    std::optional<PartialOrientation> certificate;
    std::map<std::string, std::uint64_t> stats;
};

/// Copy of inst without its zero-zero edges; kept[i] is the original id of
/// edge i of the result.
Instance drop_zero_zero(const Instance &inst, std::vector<EdgeId> &kept);

}  // namespace fairorient
