#include "doctest.h"

#include <set>
#include <sstream>

#include "fairorient/heavy_ef.hpp"
#include "fairorient/oracle.hpp"
#include "fairorient/random.hpp"
#include "fairorient/reductions.hpp"
#include "helpers.hpp"

using namespace fairorient;
using reductions::Cnf;

namespace {

bool sat_brute(const Cnf &cnf)
{
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << cnf.variables); ++a) {
        bool all = true;
        for (const auto &clause : cnf.clauses) {
            bool any = false;
            for (int lit : clause) {
                const bool val = (a >> (std::abs(lit) - 1)) & 1;
                any = any || (lit > 0 ? val : !val);
            }
            all = all && any;
        }
        if (all)
            return true;
    }
    return false;
}

bool ef_exists(const Instance &inst)
{
    oracle::Options opt;
    opt.exists_cap = 26;
    return oracle::brute_exists(inst, Fairness::EF, opt).exists;
}

bool too_brute(const reductions::TooInstance &too)
{
    const std::size_t m = too.edges.size();
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
        std::vector<Weight> got(too.n, 0);
        for (std::size_t e = 0; e < m; ++e) {
            const auto &[u, v, w] = too.edges[e];
            got[(code >> e) & 1 ? v : u] += w;
        }
        if (got == too.capacity)
            return true;
    }
    return false;
}

std::size_t degree(const Instance &inst, Vertex v) { return inst.incident(v).size(); }

}  // namespace

TEST_CASE("dimacs parsing")
{
    std::istringstream in("c hello\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n%\n0\n");
    const Cnf cnf = reductions::parse_dimacs(in);
    CHECK(cnf.variables == 3);
    REQUIRE(cnf.clauses.size() == 2);
    CHECK(cnf.clauses[0] == std::vector<int>{1, -2});
    CHECK(cnf.clauses[1] == std::vector<int>{2, 3, -1});
    std::ostringstream out;
    reductions::write_dimacs(out, cnf);
    std::istringstream back(out.str());
    const Cnf again = reductions::parse_dimacs(back);
    CHECK(again.clauses == cnf.clauses);

    for (const char *bad : {"1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 1\n1 x 0\n",
                            "p cnf 2 1\n0\n"}) {
        std::istringstream b(bad);
        CHECK_THROWS_AS(reductions::parse_dimacs(b), InputError);
    }
}

TEST_CASE("sat_to_ef examples")
{
    const Cnf unit{1, {{1}}};
    const Instance g = reductions::sat_to_ef(unit);
    // t1, f1, t1^1, f1^1, clause, two triangle vertices
    CHECK(g.vertex_count() == 7);
    CHECK(g.edge_count() == 7);
    CHECK(g.is_simple());
    CHECK(g.is_symmetric());
    CHECK(g.edge(0).w_u == 1);
    CHECK(ef_exists(g));

    const Cnf contra{1, {{1}, {-1}}};
    CHECK_FALSE(ef_exists(reductions::sat_to_ef(contra)));

    const Cnf wide{2, {{1, 2}, {1, -2}, {1}}};
    const Instance w = reductions::sat_to_ef(wide);
    std::size_t heavy = 0;
    for (const Edge &e : w.edges())
        heavy += e.w_u >= 2;
    CHECK(heavy <= wide.variables);
    CHECK(w.edge(0).w_u == 3);  // x1 appears three times positively

    CHECK_THROWS_AS(reductions::sat_to_ef(Cnf{1, {{1, -1}}}), InputError);
    CHECK_THROWS_AS(reductions::sat_to_ef(Cnf{1, {}}), InputError);
    CHECK_THROWS_AS(reductions::sat_to_ef(Cnf{1, {{}}}), InputError);
    CHECK_THROWS_AS(reductions::sat_to_ef(Cnf{1, {{2}}}), InputError);
}

TEST_CASE("property: sat_to_ef is equisatisfiable on tiny CNFs")
{
    gen::Rng rng(2024);
    int done = 0;
    while (done < 60) {
        Cnf cnf;
        cnf.variables = 1 + rng.below(2);
        const std::size_t clauses = 1 + rng.below(3);
        for (std::size_t c = 0; c < clauses; ++c) {
            std::set<int> vars;
            std::vector<int> clause;
            const std::size_t len = 1 + rng.below(cnf.variables);
            while (clause.size() < len) {
                const int x = static_cast<int>(1 + rng.below(cnf.variables));
                if (vars.insert(x).second)
                    clause.push_back(rng.coin() ? x : -x);
            }
            cnf.clauses.push_back(clause);
        }
        const Instance g = reductions::sat_to_ef(cnf);
        if (g.edge_count() > 24)
            continue;
        ++done;
        CHECK(g.is_simple());
        CHECK(g.is_symmetric());
        CHECK(ef_exists(g) == sat_brute(cnf));
        CHECK(heavy::solve_heavy(g).decision == sat_brute(cnf));
    }
}

TEST_CASE("sat2p2n examples")
{
    // three variables, every clause holds all three
    const Cnf cnf{3, {{1, 2, 3}, {1, -2, -3}, {-1, 2, -3}, {-1, -2, 3}}};
    const Instance g = reductions::sat2p2n_to_ef(cnf);
    CHECK(g.vertex_count() == 10);
    CHECK(g.edge_count() == 15);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        CHECK(degree(g, v) == 3);
    for (const Edge &e : g.edges())
        CHECK((e.w_u == 1 || e.w_u == 2));
    CHECK(g.is_simple());
    CHECK(g.is_symmetric());
    CHECK(ef_exists(g) == sat_brute(cnf));

    const Cnf unsat{3, {{1, 2, 3}, {1, 2, 3}, {-1, -2, -3}, {-1, -2, -3}}};
    CHECK(ef_exists(reductions::sat2p2n_to_ef(unsat)) == sat_brute(unsat));

    CHECK_THROWS_AS(reductions::sat2p2n_to_ef(Cnf{3, {{1, 2, 3}}}), InputError);
    CHECK_THROWS_AS(reductions::sat2p2n_to_ef(Cnf{3, {{1, 1, 3}, {1, -2, -3}, {-1, 2, -3}, {-1, -2, 3}}}), InputError);
}

TEST_CASE("partition examples")
{
    const Instance yes = reductions::partition_to_ef({1, 1, 2}, reductions::PartitionMode::Simple);
    CHECK(yes.edge_count() == 8);
    CHECK(yes.vertex_count() == 7);
    CHECK(ef_exists(yes));
    for (const Edge &e : yes.edges())
        CHECK((e.u <= 1 || e.v <= 1));  // u1, u2 cover every edge
    CHECK_THROWS_AS(reductions::partition_to_ef({1, 1, 1}, reductions::PartitionMode::Simple), RefusalError);
    // {3, 1, 1} has an odd total; {4, 1, 1} is even but has no split
    CHECK_FALSE(ef_exists(reductions::partition_to_ef({4, 1, 1}, reductions::PartitionMode::Simple)));
    CHECK(ef_exists(reductions::partition_to_ef({3, 1, 1, 1}, reductions::PartitionMode::Simple)));
    CHECK_THROWS_AS(reductions::partition_to_ef({3, 1, 1}, reductions::PartitionMode::Simple), RefusalError);
    CHECK_THROWS_AS(reductions::partition_to_ef({0, 2}, reductions::PartitionMode::Simple), InputError);

    const Instance two = reductions::partition_to_ef({1, 1, 2}, reductions::PartitionMode::TwoVertex);
    CHECK(two.vertex_count() == 2);
    CHECK(two.edge_count() == 3);
    CHECK(ef_exists(two));
    CHECK_FALSE(ef_exists(reductions::partition_to_ef({4, 1, 1}, reductions::PartitionMode::TwoVertex)));
    CHECK(ef_exists(reductions::partition_to_ef({3, 1, 1, 1}, reductions::PartitionMode::TwoVertex)));
}

TEST_CASE("too examples")
{
    using reductions::TooInstance;
    const TooInstance tri{3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, {1, 1, 1}};
    const Instance g = reductions::too_to_ef(tri);
    CHECK(g.vertex_count() == 5);
    CHECK(g.is_simple());
    CHECK(g.is_symmetric());
    CHECK(ef_exists(g));
    CHECK(too_brute(tri));

    const TooInstance fat{2, {{0, 1, 2}}, {1, 1}};
    CHECK_THROWS_AS(reductions::too_to_ef(fat), InputError);

    const TooInstance path{3, {{0, 1, 1}, {1, 2, 1}}, {1, 1, 0}};
    CHECK_THROWS_AS(reductions::too_to_ef(path), InputError);
    const auto norm = reductions::normalize_too(path);
    CHECK_FALSE(norm.trivially_no);
    CHECK(norm.forced.size() == 2);
    CHECK(ef_exists(reductions::too_to_ef(norm.reduced)) == too_brute(path));

    const TooInstance off{2, {{0, 1, 1}}, {1, 1}};
    CHECK_THROWS_AS(reductions::too_to_ef(off), InputError);
    CHECK(reductions::normalize_too(off).trivially_no);
    CHECK_THROWS_AS(reductions::too_to_ef(TooInstance{2, {{0, 1, 1}, {1, 0, 1}}, {1, 1}}), InputError);
}

TEST_CASE("property: too reduction against target-orientation brute force")
{
    gen::Rng rng(31);
    for (int round = 0; round < 150; ++round) {
        gen::RandomSpec spec;
        spec.n = 2 + rng.below(3);
        spec.m = rng.below(spec.n * (spec.n - 1) / 2 + 1);
        spec.simple = true;
        spec.symmetric = true;
        spec.max_weight = 2;
        spec.no_zero_zero = true;
        spec.seed = 400 + round;
        const Instance base = gen::random_instance(spec);
        reductions::TooInstance too;
        too.n = base.vertex_count();
        for (const Edge &e : base.edges())
            too.edges.emplace_back(e.u, e.v, e.w_u);
        // capacities from a random orientation half the time, random otherwise
        too.capacity.assign(too.n, 0);
        if (rng.coin()) {
            for (const auto &[u, v, w] : too.edges)
                too.capacity[rng.coin() ? u : v] += w;
        } else {
            for (auto &c : too.capacity)
                c = rng.below(4);
        }
        const auto norm = reductions::normalize_too(too);
        const bool truth = too_brute(too);
        if (norm.trivially_no) {
            CHECK_FALSE(truth);
            continue;
        }
        const Instance g = reductions::too_to_ef(norm.reduced);
        CHECK(g.vertex_count() == too.n + 2);
        CHECK(ef_exists(g) == truth);
    }
}

TEST_CASE("ef_to_efx examples")
{
    const Instance tri = test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}});
    const Instance t2 = reductions::ef_to_efx(tri);
    CHECK(t2.vertex_count() == 5);
    CHECK(t2.edge_count() == 3 + 2 * 3 + 1);
    CHECK(t2.is_simple());
    CHECK(oracle::brute_exists(t2, Fairness::EFX).exists);

    const Instance one = test::make(2, {{0, 1, 1, 1}});
    CHECK_FALSE(oracle::brute_exists(reductions::ef_to_efx(one), Fairness::EFX).exists);
    CHECK_FALSE(oracle::brute_exists(one, Fairness::EF).exists);

    const Instance multi = test::make(2, {{0, 1, 1, 1}, {0, 1, 1, 1}});
    CHECK_FALSE(reductions::ef_to_efx(multi).is_simple());
}
