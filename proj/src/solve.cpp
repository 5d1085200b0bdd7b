#include "fairorient/solve.hpp"

#include <chrono>
#include <omp.h>

#include "json.hpp"

#include "fairorient/binary_ef.hpp"
#include "fairorient/dp.hpp"
#include "fairorient/heavy_ef.hpp"
#include "fairorient/oracle.hpp"

namespace fairorient {

Problem parse_problem(const std::string &s)
{
    if (s == "ef")
        return Problem::EF;
    if (s == "efx")
        return Problem::EFX;
    if (s == "ef-mc")
        return Problem::EFMinCharity;
    if (s == "efx-mc")
        return Problem::EFXMinCharity;
    throw InputError("unknown problem '" + s + "' (ef, efx, ef-mc, efx-mc)");
}

Algo parse_algo(const std::string &s)
{
    if (s == "auto")
        return Algo::Auto;
    if (s == "brute")
        return Algo::Brute;
    if (s == "binary")
        return Algo::Binary;
    if (s == "heavy")
        return Algo::Heavy;
    if (s == "dp")
        return Algo::Dp;
    throw InputError("unknown algorithm '" + s + "' (auto, brute, binary, heavy, dp)");
}

const char *to_string(Problem p)
{
    switch (p) {
    case Problem::EF: return "ef";
    case Problem::EFX: return "efx";
    case Problem::EFMinCharity: return "ef-mc";
    case Problem::EFXMinCharity: return "efx-mc";
    }
    return "?";
}

const char *to_string(Algo a)
{
    switch (a) {
    case Algo::Auto: return "auto";
    case Algo::Brute: return "brute";
    case Algo::Binary: return "binary";
    case Algo::Heavy: return "heavy";
    case Algo::Dp: return "dp";
    }
    return "?";
}

std::size_t heavy_edge_count(const Instance &inst)
{
    std::size_t k = 0;
    for (const Edge &e : inst.edges())
        if (e.w_u >= 2 || e.w_v >= 2)
            ++k;
    return k;
}

Algo choose_algorithm(const Instance &inst, const SolveRequest &req)
{
    const Problem p = req.problem;
    const bool ef = fairness_of(p) == Fairness::EF;
    switch (req.algo) {
    case Algo::Auto:
        if (ef && inst.is_binary())
            return Algo::Binary;
        if (p == Problem::EF && inst.is_simple() && heavy_edge_count(inst) <= req.heavy_threshold)
            return Algo::Heavy;
        return Algo::Dp;
    case Algo::Binary:
        if (!ef)
            throw InputError("binary solver handles ef and ef-mc only, not " + std::string(to_string(p)));
        if (!inst.is_binary())
            throw InputError("binary solver needs all values in {0, 1}");
        return Algo::Binary;
    case Algo::Heavy:
        if (p != Problem::EF)
            throw InputError("heavy solver decides ef only, not " + std::string(to_string(p)));
        if (!inst.is_simple())
            throw InputError("heavy solver needs a simple graph");
        return Algo::Heavy;
    case Algo::Brute:
    case Algo::Dp:
        return req.algo;
    }
    throw InputError("bad algorithm");
}

namespace {

SolveReport run_dp(const Instance &inst, const SolveRequest &req)
{
    decomp::TreeDecomposition td;
    if (req.td) {
        td = *req.td;
        if (td.n != inst.vertex_count())
            throw InputError("tree decomposition covers " + std::to_string(td.n) + " vertices, instance has " +
                             std::to_string(inst.vertex_count()));
        if (const auto v = decomp::validate(inst, td); !v.ok)
            throw InputError("invalid tree decomposition: " + v.detail);
    } else {
        td = decomp::heuristic_decomposition(inst);
    }
    const auto nd = decomp::make_nice(inst, td);
    SolveReport r = fairness_of(req.problem) == Fairness::EF ? dp::solve_ef_mc(inst, nd) : dp::solve_efx_mc(inst, nd);
    r.stats["width"] = static_cast<std::uint64_t>(std::max(0, nd.width()));
    return r;
}

SolveReport run_brute(const Instance &inst, Problem p)
{
    SolveReport r;
    r.algorithm = "brute";
    r.fairness = fairness_of(p);
    if (is_min_charity(p)) {
        auto res = oracle::brute_min_charity(inst, r.fairness);
        r.min_charity = res.min_charity;
        r.decision = res.min_charity == 0;
        r.certificate = std::move(res.certificate);
        r.stats["visited"] = res.visited;
    } else {
        auto res = oracle::brute_exists(inst, r.fairness);
        r.decision = res.exists;
        r.min_charity = res.exists ? std::optional<std::uint64_t>(0) : std::nullopt;
        r.certificate = std::move(res.certificate);
        r.stats["visited"] = res.visited;
    }
    return r;
}

}  // namespace

SolveOutcome solve(const Instance &inst, const SolveRequest &req)
{
    SolveOutcome out;
    out.algo = choose_algorithm(inst, req);
    if (req.threads > 0)
        omp_set_num_threads(req.threads);
    const auto t0 = std::chrono::steady_clock::now();
    const Goal goal = is_min_charity(req.problem) ? Goal::MinCharity : Goal::Decision;
    switch (out.algo) {
    case Algo::Binary:
        out.report = binary::solve_binary(inst, goal);
        break;
    case Algo::Heavy: {
        heavy::Options opt;
        opt.threads = req.threads;
        out.report = heavy::solve_heavy(inst, Goal::Decision, opt);
        break;
    }
    case Algo::Dp:
        out.report = run_dp(inst, req);
        break;
    case Algo::Brute:
        out.report = run_brute(inst, req.problem);
        break;
    case Algo::Auto:
        throw InternalError("unresolved algorithm");
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    SolveReport &r = out.report;
    r.fairness = fairness_of(req.problem);
    if (!is_min_charity(req.problem)) {
        // dp and binary always know the charity; a decision only asks for zero
        if (r.min_charity)
            r.decision = *r.min_charity == 0;
        if (!r.decision)
            r.certificate.reset();
        r.min_charity = r.decision ? std::optional<std::uint64_t>(0) : std::nullopt;
    } else {
        if (!r.min_charity || !r.certificate)
            throw InternalError(std::string(r.algorithm) + " returned no charity certificate");
        r.decision = *r.min_charity == 0;
    }
    return out;
}

std::string report_json(const SolveOutcome &out, Problem problem, bool with_certificate)
{
    const SolveReport &r = out.report;
    nlohmann::ordered_json j;
    j["algorithm"] = r.algorithm;
    j["problem"] = to_string(problem);
    j["decision"] = r.decision;
    j["min_charity"] = r.min_charity ? nlohmann::ordered_json(*r.min_charity) : nlohmann::ordered_json(nullptr);
    j["wall_seconds"] = out.wall_seconds;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.stats)
        stats[k] = v;
    j["stats"] = std::move(stats);
    if (with_certificate && r.certificate) {
        nlohmann::ordered_json cert = nlohmann::ordered_json::array();
        for (Assignment a : r.certificate->assignments())
            cert.push_back(a == Assignment::ToU ? "1" : a == Assignment::ToV ? "2" : "c");
        j["certificate"] = std::move(cert);
    }
    return j.dump(2);
}

CertificateCheck check_certificate(const Instance &inst, const PartialOrientation &o, Problem problem,
                                   std::optional<std::size_t> charity)
{
    CertificateCheck c;
    const Fairness f = fairness_of(problem);
    const VerifyResult v = verify(inst, o, f);
    c.charity = v.charity;
    if (!v.ok) {
        c.message = "invalid: agent " + std::to_string(v.witness->first + 1) +
                    (f == Fairness::EF ? " envies" : " strongly envies") + " agent " +
                    std::to_string(v.witness->second + 1);
        return c;
    }
    if (!is_min_charity(problem) && v.charity != 0) {
        c.message = "invalid: " + std::to_string(v.charity) + " edges unoriented, " + to_string(problem) +
                    " needs a full orientation";
        return c;
    }
    if (charity && *charity != v.charity) {
        c.message = "invalid: charity " + std::to_string(v.charity) + ", expected " + std::to_string(*charity);
        return c;
    }
    c.ok = true;
    c.message = "valid charity " + std::to_string(v.charity);
    return c;
}

}  // namespace fairorient
