// fairorient: solve, verify and generate fair orientation instances.
//
// Exit status: 0 yes (or a charity was found), 1 no / invalid, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fairorient/core.hpp"
#include "fairorient/decomp.hpp"
#include "fairorient/io.hpp"
#include "fairorient/random.hpp"
#include "fairorient/reductions.hpp"
#include "fairorient/solve.hpp"

using namespace fairorient;

namespace {

constexpr int kYes = 0, kNo = 1, kError = 2;

struct SolveArgs {
    std::string instance, problem = "ef", algo = "auto", td;
    bool certificate = false, json = false;
    int threads = 0;
    std::size_t heavy_threshold = 24;
};

struct VerifyArgs {
    std::string instance, certificate, problem = "ef";
    std::optional<std::size_t> charity;
};

struct GenArgs {
    std::string from, cnf, items, mode = "simple", too, instance, out;
    bool normalize = false;
    gen::RandomSpec random;
    std::optional<std::size_t> max_heavy;
};

int cmd_solve(const SolveArgs &a)
{
    const Instance inst = io::read_instance_file(a.instance);
    SolveRequest req;
    req.problem = parse_problem(a.problem);
    req.algo = parse_algo(a.algo);
    req.threads = a.threads;
    req.heavy_threshold = a.heavy_threshold;
    if (!a.td.empty())
        req.td = decomp::read_pace_file(a.td);
    const SolveOutcome out = solve(inst, req);
    const SolveReport &r = out.report;
    if (a.json) {
        std::cout << report_json(out, req.problem, a.certificate) << '\n';
    } else {
        std::cout << "decision " << (r.decision ? "yes" : "no") << '\n';
        if (r.min_charity)
            std::cout << "min_charity " << *r.min_charity << '\n';
        std::cout << "algorithm " << r.algorithm << '\n';
        if (a.certificate && r.certificate)
            io::write_certificate(std::cout, *r.certificate);
    }
    if (is_min_charity(req.problem))
        return kYes;
    return r.decision ? kYes : kNo;
}

int cmd_verify(const VerifyArgs &a)
{
    const Instance inst = io::read_instance_file(a.instance);
    const PartialOrientation o = io::read_certificate_file(a.certificate, inst);
    const CertificateCheck c = check_certificate(inst, o, parse_problem(a.problem), a.charity);
    std::cout << c.message << '\n';
    return c.ok ? kYes : kNo;
}

std::vector<Weight> parse_items(const std::string &s)
{
    std::vector<Weight> items;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != tok.size() || tok[0] == '-')
            throw InputError("bad item '" + tok + "' in --items");
        items.push_back(v);
    }
    if (items.empty())
        throw InputError("--items is empty");
    return items;
}

void need(const std::string &value, const char *flag, const std::string &from)
{
    if (value.empty())
        throw InputError(std::string("gen --from ") + from + " needs " + flag);
}

int cmd_gen(const GenArgs &a)
{
    Instance inst;
    std::ostringstream note;
    note << "generated by fairorient gen --from " << a.from;
    if (a.from == "sat" || a.from == "2p2n") {
        need(a.cnf, "--cnf", a.from);
        const auto cnf = reductions::read_dimacs_file(a.cnf);
        inst = a.from == "sat" ? reductions::sat_to_ef(cnf) : reductions::sat2p2n_to_ef(cnf);
    } else if (a.from == "partition") {
        need(a.items, "--items", a.from);
        if (a.mode != "simple" && a.mode != "two-vertex")
            throw InputError("--mode must be simple or two-vertex");
        inst = reductions::partition_to_ef(parse_items(a.items),
                                           a.mode == "simple" ? reductions::PartitionMode::Simple
                                                              : reductions::PartitionMode::TwoVertex);
    } else if (a.from == "too") {
        need(a.too, "--too", a.from);
        auto too = io::read_too_file(a.too);
        if (a.normalize) {
            const auto norm = reductions::normalize_too(too);
            if (norm.trivially_no) {
                std::cerr << "fairorient: the orientation instance is trivially infeasible\n";
                return kNo;
            }
            for (const auto &[e, to] : norm.forced)
                note << "\nforced input edge " << e + 1 << " to vertex " << to + 1;
            too = norm.reduced;
        }
        inst = reductions::too_to_ef(too);
    } else if (a.from == "ef2efx") {
        need(a.instance, "--instance", a.from);
        inst = reductions::ef_to_efx(io::read_instance_file(a.instance));
    } else if (a.from == "random") {
        gen::RandomSpec spec = a.random;
        spec.max_heavy = a.max_heavy;
        inst = gen::random_instance(spec);
        note << " --seed " << spec.seed;
    } else {
        throw InputError("unknown generator '" + a.from + "'");
    }
    if (a.out.empty() || a.out == "-") {
        io::write_instance(std::cout, inst, note.str());
    } else {
        std::ofstream f(a.out);
        if (!f)
            throw InputError("cannot write " + a.out);
        io::write_instance(f, inst, note.str());
    }
    return kYes;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Envy-free and EFX orientations of multigraphs"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto *solve_cmd = app.add_subcommand("solve", "decide or compute minimum charity");
    solve_cmd->add_option("instance", sa.instance, "instance file")->required();
    solve_cmd->add_option("--problem", sa.problem, "ef, efx, ef-mc or efx-mc")->capture_default_str();
    solve_cmd->add_option("--algo", sa.algo, "auto, brute, binary, heavy or dp")->capture_default_str();
    solve_cmd->add_option("--td", sa.td, "tree decomposition in PACE .td format (dp)");
    solve_cmd->add_flag("--certificate", sa.certificate, "print the orientation");
    solve_cmd->add_flag("--json", sa.json, "machine-readable report");
    solve_cmd->add_option("--threads", sa.threads, "OpenMP threads, 0 for the default")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--heavy-threshold", sa.heavy_threshold, "auto uses heavy up to this many heavy edges")
        ->capture_default_str();

    VerifyArgs va;
    auto *verify_cmd = app.add_subcommand("verify", "check a certificate");
    verify_cmd->add_option("instance", va.instance, "instance file")->required();
    verify_cmd->add_option("certificate", va.certificate, "certificate file (o lines)")->required();
    verify_cmd->add_option("--problem", va.problem, "ef, efx, ef-mc or efx-mc")->capture_default_str();
    verify_cmd->add_option("--charity", va.charity, "required number of unoriented edges");

    GenArgs ga;
    auto *gen_cmd = app.add_subcommand("gen", "write a generated instance");
    gen_cmd->add_option("--from", ga.from, "sat, 2p2n, partition, too, ef2efx or random")->required();
    gen_cmd->add_option("--cnf", ga.cnf, "DIMACS file (sat, 2p2n)");
    gen_cmd->add_option("--items", ga.items, "comma-separated positive sizes (partition)");
    gen_cmd->add_option("--mode", ga.mode, "simple or two-vertex (partition)")->capture_default_str();
    gen_cmd->add_option("--too", ga.too, "target outdegree orientation file (too)");
    gen_cmd->add_flag("--normalize", ga.normalize, "orient over-capacity edges first (too)");
    gen_cmd->add_option("--instance", ga.instance, "EF instance (ef2efx)");
    gen_cmd->add_option("--n", ga.random.n, "vertices (random)")->capture_default_str();
    gen_cmd->add_option("--m", ga.random.m, "edges (random)")->capture_default_str();
    gen_cmd->add_option("--max-weight", ga.random.max_weight, "largest value (random)")->capture_default_str();
    gen_cmd->add_flag("--simple", ga.random.simple, "no parallel edges (random)");
    gen_cmd->add_flag("--symmetric", ga.random.symmetric, "equal values at both ends (random)");
    gen_cmd->add_flag("--no-zero-zero", ga.random.no_zero_zero, "forbid edges valued 0 by both ends (random)");
    gen_cmd->add_option("--max-heavy", ga.max_heavy, "cap on edges valued 2 or more (random)");
    gen_cmd->add_option("--seed", ga.random.seed, "seed (random)")->capture_default_str();
    gen_cmd->add_option("--out", ga.out, "output file, default standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*solve_cmd)
            return cmd_solve(sa);
        if (*verify_cmd)
            return cmd_verify(va);
        return cmd_gen(ga);
    } catch (const std::exception &e) {
        std::cerr << "fairorient: " << e.what() << '\n';
        return kError;
    }
}
