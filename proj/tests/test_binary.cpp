#include "doctest.h"

#include "fairorient/binary_ef.hpp"
#include "fairorient/oracle.hpp"
#include "fairorient/random.hpp"
#include "helpers.hpp"

using namespace fairorient;
using binary::Property;
using binary::Repair;

TEST_CASE("preprocess_binary")
{
    const Instance inst = test::make(3, {{0, 1, 1, 0}, {0, 1, 0, 0}, {1, 2, 1, 1}, {1, 2, 1, 1}});
    const auto pg = binary::preprocess_binary(inst);
    CHECK(pg.forced == std::vector<EdgeId>{0});
    CHECK(pg.discarded == std::vector<EdgeId>{1});
    CHECK(pg.prime == std::vector<EdgeId>{2, 3});
    REQUIRE(pg.bundles.size() == 1);
    CHECK(pg.bundles[0].count == 2);
    CHECK(pg.forced_in[0] == 1);
    CHECK(pg.forced_in[1] == 0);
    CHECK_THROWS_AS(binary::preprocess_binary(test::make(2, {{0, 1, 2, 1}})), InputError);
}

TEST_CASE("diagnose examples")
{
    SUBCASE("triangle")
    {
        const auto d = binary::diagnose_components(
            binary::preprocess_binary(test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 1, 1}})));
        REQUIRE(d.size() == 1);
        CHECK(d[0].property == Property::Circuit);
        CHECK(d[0].cycle.size() == 3);
        CHECK(d[0].repair == Repair::None);
    }
    SUBCASE("path with a forced edge")
    {
        const auto d = binary::diagnose_components(
            binary::preprocess_binary(test::make(4, {{0, 1, 1, 1}, {1, 2, 1, 1}, {1, 3, 1, 0}})));
        // components {0,1,2} and {3}
        REQUIRE(d.size() == 2);
        CHECK(d[0].property == Property::ForcedEdge);
        CHECK(d[1].property == Property::Singleton);
    }
    SUBCASE("singleton, even bundle, bare path")
    {
        CHECK(binary::diagnose_components(binary::preprocess_binary(Instance(1, {})))[0].property ==
              Property::Singleton);
        const auto even = binary::diagnose_components(binary::preprocess_binary(test::make(2, {{0, 1, 1, 1}, {0, 1, 1, 1}})));
        CHECK(even[0].property == Property::EvenBundle);
        const auto path = binary::diagnose_components(binary::preprocess_binary(test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}})));
        CHECK(path[0].property == Property::None);
        CHECK(path[0].repair == Repair::RemoveAllEdges);
        CHECK(oracle::brute_min_charity(test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}), Fairness::EF).min_charity == 2);
    }
    SUBCASE("two thick bundles at a pivot")
    {
        // 0 =3= 1 =3= 2, odd bundles and no cycle
        const Instance inst = test::make(3, {{0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}, {1, 2, 1, 1}, {1, 2, 1, 1}, {1, 2, 1, 1}});
        const auto d = binary::diagnose_components(binary::preprocess_binary(inst));
        CHECK(d[0].property == Property::Circuit);
        CHECK(d[0].cycle.empty());
        REQUIRE(d[0].pivot);
        CHECK(*d[0].pivot == 1);
    }
    SUBCASE("odd bundle alone loses one edge")
    {
        const Instance inst = test::make(2, {{0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}});
        const auto d = binary::diagnose_components(binary::preprocess_binary(inst));
        CHECK(d[0].property == Property::None);
        CHECK(d[0].repair == Repair::RemoveOneEdge);
    }
}

TEST_CASE("solve_binary examples")
{
    const auto tri = binary::solve_binary(test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}}), Goal::MinCharity);
    CHECK(tri.decision);
    CHECK(*tri.min_charity == 0);
    const auto path = binary::solve_binary(test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}), Goal::MinCharity);
    CHECK_FALSE(path.decision);
    CHECK(*path.min_charity == 2);
    const Instance three = test::make(2, {{0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}});
    const auto par = binary::solve_binary(three, Goal::MinCharity);
    CHECK_FALSE(par.decision);
    CHECK(*par.min_charity == 1);
    REQUIRE(par.certificate);
    const auto v = verify(three, *par.certificate, Fairness::EF);
    CHECK(v.ok);
    CHECK(v.charity == 1);

    // decisions carry a certificate only on yes
    CHECK_FALSE(binary::solve_binary(test::make(2, {{0, 1, 1, 1}}), Goal::Decision).certificate);
    CHECK_THROWS_AS(binary::solve_binary(test::make(2, {{0, 1, 3, 1}}), Goal::Decision), InputError);
}

TEST_CASE("propagation examples")
{
    SUBCASE("even bundle splits one each way")
    {
        const Instance inst = test::make(2, {{0, 1, 1, 1}, {0, 1, 1, 1}});
        const auto r = binary::solve_binary(inst, Goal::Decision);
        REQUIRE(r.certificate);
        CHECK((*r.certificate)[0] != (*r.certificate)[1]);
    }
    SUBCASE("happy center hands each unit leaf its edge")
    {
        // vertex 4 gives center 0 a forced good
        const Instance inst = test::make(5, {{0, 1, 1, 1}, {0, 2, 1, 1}, {0, 3, 1, 1}, {0, 4, 1, 0}});
        const auto r = binary::solve_binary(inst, Goal::Decision);
        REQUIRE(r.certificate);
        for (EdgeId e = 0; e < 3; ++e)
            CHECK(r.certificate->holder(inst, e) == e + 1);
        CHECK(r.certificate->holder(inst, 3) == 0);
    }
    SUBCASE("triangle comes out as a directed cycle")
    {
        const Instance inst = test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}});
        const auto r = binary::solve_binary(inst, Goal::Decision);
        REQUIRE(r.certificate);
        std::vector<int> got(3, 0);
        for (EdgeId e = 0; e < 3; ++e)
            ++got[r.certificate->holder(inst, e)];
        CHECK(got == std::vector<int>{1, 1, 1});
        CHECK(test::naive_fair(inst, *r.certificate, Fairness::EF));
    }
}

TEST_CASE("diagnosis does not depend on edge order of equal graphs")
{
    const Instance a = test::make(4, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 3, 1, 1}, {3, 1, 1, 1}});
    const Instance b = test::make(4, {{3, 1, 1, 1}, {2, 3, 1, 1}, {0, 1, 1, 1}, {1, 2, 1, 1}});
    const auto da = binary::diagnose_components(binary::preprocess_binary(a));
    const auto db = binary::diagnose_components(binary::preprocess_binary(b));
    REQUIRE(da.size() == db.size());
    for (std::size_t c = 0; c < da.size(); ++c) {
        CHECK(da[c].property == db[c].property);
        CHECK(da[c].vertices == db[c].vertices);
    }
}

TEST_CASE("property: random binary multigraphs against the oracle")
{
    for (int round = 0; round < 1500; ++round) {
        gen::RandomSpec spec;
        spec.n = 2 + round % 6;
        spec.m = round % 11;
        spec.max_weight = 1;
        spec.symmetric = round % 3 == 0;
        spec.seed = 77 + round;
        const Instance inst = gen::random_instance(spec);
        const auto r = binary::solve_binary(inst, Goal::MinCharity);
        const auto o = oracle::brute_min_charity(inst, Fairness::EF);
        CHECK(*r.min_charity == o.min_charity);
        CHECK(r.decision == (o.min_charity == 0));
        REQUIRE(r.certificate);
        CHECK(test::naive_fair(inst, *r.certificate, Fairness::EF));
        CHECK(r.certificate->charity_count() == o.min_charity);
    }
}

TEST_CASE("work counters stay linear")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        gen::RandomSpec spec;
        spec.n = 2000;
        spec.m = 3000 + 500 * seed;
        spec.max_weight = 1;
        spec.seed = seed;
        const Instance inst = gen::random_instance(spec);
        const auto r = binary::solve_binary(inst, Goal::MinCharity);
        // every vertex is queued at most three times: seed, first source, a second source
        CHECK(r.stats.at("vertex_pops") <= 3 * inst.vertex_count());
        CHECK(r.stats.at("bundle_scans") <= 6 * r.stats.at("bundles"));
        CHECK(verify(inst, *r.certificate, Fairness::EF).ok);
    }
}
