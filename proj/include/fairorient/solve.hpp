#pragma once

// One entry point over all solvers, used by the CLI.

#include <optional>
#include <string>

#include "fairorient/core.hpp"
#include "fairorient/decomp.hpp"

namespace fairorient {

enum class Problem : std::uint8_t { EF, EFX, EFMinCharity, EFXMinCharity };
enum class Algo : std::uint8_t { Auto, Brute, Binary, Heavy, Dp };

Problem parse_problem(const std::string &s);  // ef, efx, ef-mc, efx-mc
Algo parse_algo(const std::string &s);        // auto, brute, binary, heavy, dp
const char *to_string(Problem p);
const char *to_string(Algo a);

inline Fairness fairness_of(Problem p) { return p == Problem::EF || p == Problem::EFMinCharity ? Fairness::EF : Fairness::EFX; }
inline bool is_min_charity(Problem p) { return p == Problem::EFMinCharity || p == Problem::EFXMinCharity; }

struct SolveRequest {
    Problem problem = Problem::EF;
    Algo algo = Algo::Auto;
    std::optional<decomp::TreeDecomposition> td;  // dp only
    int threads = 0;                              // 0: OpenMP default
    std::size_t heavy_threshold = 24;             // auto picks heavy up to this many heavy edges
};

/// Edges valued at least 2 by some endpoint.
std::size_t heavy_edge_count(const Instance &inst);

/// Resolves Auto; otherwise checks that the algorithm supports the problem
/// and the instance, throwing InputError with the reason when it does not.
Algo choose_algorithm(const Instance &inst, const SolveRequest &req);

struct SolveOutcome {
    SolveReport report;
    Algo algo = Algo::Auto;
    double wall_seconds = 0;
};
/// Decision problems carry a certificate only on yes; charity problems
/// always carry one with exactly min_charity unoriented edges.
SolveOutcome solve(const Instance &inst, const SolveRequest &req);

struct CertificateCheck {
    bool ok = false;
    std::size_t charity = 0;
    std::string message;  // "valid charity K" or "invalid: ..."
};
/// What `verify` decides: fair under the problem's notion, a full orientation
/// for ef/efx, and the stated charity when one is given.
CertificateCheck check_certificate(const Instance &inst, const PartialOrientation &o, Problem problem,
                                   std::optional<std::size_t> charity = std::nullopt);

/// Stable JSON object: algorithm, problem, decision, min_charity (or null),
/// wall_seconds, stats, and certificate (list of "1"/"2"/"c") when present.
std::string report_json(const SolveOutcome &out, Problem problem, bool with_certificate);

}  // namespace fairorient
