#pragma once

// Exhaustive ground truth for tiny instances. Orientations are enumerated as
// base-2 (full) or base-3 (partial) numbers whose digit e is the assignment
// of edge e (ToU = 0, ToV = 1, Charity = 2); edge 0 is the least significant
// digit, and every reported certificate is the numerically smallest optimal
// assignment.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fairorient/core.hpp"

namespace fairorient::oracle {

struct Options {
    std::size_t exists_cap = 20;   // max edges for brute_exists (2^m)
    std::size_t charity_cap = 13;  // max edges for brute_min_charity (3^m)
    bool prune = true;             // abandon prefixes with a settled violation
    bool parallel = false;         // OpenMP over blocks of leading digits
};

struct ExistsResult {
    bool exists = false;
    std::optional<PartialOrientation> certificate;
    std::uint64_t visited = 0;  // leaves or prefixes examined
};

struct CharityResult {
    std::size_t min_charity = 0;
    PartialOrientation certificate;
    std::uint64_t visited = 0;
};

ExistsResult brute_exists(const Instance &inst, Fairness fairness, const Options &opt = {});
CharityResult brute_min_charity(const Instance &inst, Fairness fairness, const Options &opt = {});

struct EnumerationSpec {
    std::size_t n_max = 1;
    std::size_t m_max = 0;
    Weight weight_max = 1;
    bool simple = false;
    bool symmetric = false;
    bool allow_zero_zero = true;
    std::uint64_t cap = 20'000'000;
};

/// Number of instances enumerate_small_instances would produce.
std::uint64_t count_small_instances(const EnumerationSpec &spec);

/// Streams every labeled instance on exactly n_max vertices with at most
/// m_max edges, each distinct edge multiset once. Instances on fewer vertices
/// are the ones with isolated vertices. Edges appear in canonical order
/// (u < v, then by pair, then by weights). Returns the number streamed.
std::uint64_t for_each_small_instance(const EnumerationSpec &spec,
                                      const std::function<void(const Instance &)> &visit);

std::vector<Instance> enumerate_small_instances(const EnumerationSpec &spec);

}  // namespace fairorient::oracle
