#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "fairorient/io.hpp"
#include "fairorient/random.hpp"
#include "fairorient/solve.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace fairorient;

namespace {

std::string error_of(const std::string &text)
{
    try {
        io::parse_instance_text(text);
    } catch (const InputError &e) {
        return e.what();
    }
    return {};
}

PartialOrientation cert(const Instance &inst, const std::string &text)
{
    std::istringstream in(text);
    return io::parse_certificate(in, inst);
}

bool same_edges(const Instance &a, const Instance &b)
{
    return std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

}  // namespace

TEST_CASE("instance parsing examples")
{
    const Instance one = io::parse_instance_text("p fo 2 1\ne 1 2 1 1");
    CHECK(one.vertex_count() == 2);
    REQUIRE(one.edge_count() == 1);
    CHECK(one.edge(0).u == 0);
    CHECK(one.edge(0).v == 1);
    CHECK(one.is_symmetric());

    const Instance tri = io::parse_instance_text("c a triangle\np fo 3 3\ne 1 2 1 1\ne 2 3 1 1\ne 1 3 1 1\n");
    CHECK(tri.edge_count() == 3);
    CHECK(tri.edge(2).u == 0);
    CHECK(tri.edge(2).v == 2);

    const Instance edgeless = io::parse_instance_text("p fo 4 0\n");
    CHECK(edgeless.vertex_count() == 4);
    CHECK(edgeless.edge_count() == 0);
}

TEST_CASE("instance parse errors name the line")
{
    CHECK(error_of("p fo 1 1\ne 1 1 1 1\n").find("line 2") == 0);
    CHECK(error_of("p fo 2 1\ne 1 1 1 1\n").find("line 2") == 0);
    CHECK(error_of("c x\nc y\np fo 2 1\ne 1 3 1 1\n").find("line 4") == 0);
    CHECK(error_of("p fo 2 2\ne 1 2 1 1\n") != "");
    CHECK(error_of("p fo 2 1\ne 1 2 1 1\ne 1 2 1 1\n").find("line 3") == 0);
    CHECK(error_of("p fo 2 1\ne 1 2 99999999999999999999 1\n").find("line 2") == 0);
    CHECK(error_of("p fo 2 1\ne 1 2 -1 1\n").find("line 2") == 0);
    CHECK(error_of("p xx 2 1\ne 1 2 1 1\n").find("line 1") == 0);
    CHECK(error_of("e 1 2 1 1\n") != "");
    CHECK(error_of("p fo 2 1\ne 1 2 1\n").find("line 2") == 0);
    CHECK(error_of("p fo 2 1\np fo 2 1\ne 1 2 1 1\n").find("line 2") == 0);
    CHECK(error_of("") != "");
}

TEST_CASE("property: print then parse is the identity")
{
    for (int round = 0; round < 100; ++round) {
        gen::RandomSpec spec;
        spec.n = 2 + round % 8;
        spec.m = round % 17;
        spec.max_weight = round % 2 ? 1000000007 : 3;
        spec.seed = 900 + round;
        const Instance inst = gen::random_instance(spec);
        const std::string text = io::instance_text(inst);
        const Instance back = io::parse_instance_text(text);
        CHECK(back.vertex_count() == inst.vertex_count());
        CHECK(same_edges(back, inst));
        CHECK(io::instance_text(back) == text);
    }
    std::ostringstream out;
    io::write_instance(out, test::make(2, {{0, 1, 1, 2}}), "two\nlines");
    CHECK(out.str() == "c two\nc lines\np fo 2 1\ne 1 2 1 2\n");
}

TEST_CASE("certificates")
{
    const Instance tri = test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}});
    const auto o = cert(tri, "decision yes\no 1 1\no 3 c\no 2 2\n");
    CHECK(o[0] == Assignment::ToU);
    CHECK(o[1] == Assignment::ToV);
    CHECK(o[2] == Assignment::Charity);
    std::ostringstream out;
    io::write_certificate(out, o);
    CHECK(out.str() == "o 1 1\no 2 2\no 3 c\n");
    CHECK(cert(tri, out.str()) == o);

    CHECK_THROWS_AS(cert(tri, "o 1 1\no 2 2\n"), InputError);
    CHECK_THROWS_AS(cert(tri, "o 1 1\no 1 2\no 2 2\no 3 1\n"), InputError);
    CHECK_THROWS_AS(cert(tri, "o 1 1\no 2 2\no 4 1\n"), InputError);
    CHECK_THROWS_AS(cert(tri, "o 1 1\no 2 2\no 3 x\n"), InputError);
    CHECK_THROWS_AS(cert(tri, "o 0 1\no 2 2\no 3 1\n"), InputError);
}

TEST_CASE("too files")
{
    const std::string text = "p too 3 2\nv 1 1\nv 2 1\nv 3 0\ne 1 2 1\ne 2 3 1\n";
    std::istringstream in(text);
    const auto too = io::parse_too(in);
    CHECK(too.n == 3);
    CHECK(too.capacity == std::vector<Weight>{1, 1, 0});
    REQUIRE(too.edges.size() == 2);
    CHECK(std::get<1>(too.edges[1]) == 2);
    std::ostringstream out;
    io::write_too(out, too);
    std::istringstream back(out.str());
    const auto again = io::parse_too(back);
    CHECK(again.edges == too.edges);
    CHECK(again.capacity == too.capacity);

    std::istringstream bad("p too 2 1\ne 1 1 1\n");
    CHECK_THROWS_AS(io::parse_too(bad), InputError);
}

TEST_CASE("seeded generation is deterministic")
{
    gen::RandomSpec spec;
    spec.n = 30;
    spec.m = 200;
    spec.max_weight = 5;
    spec.seed = 42;
    CHECK(same_edges(gen::random_instance(spec), gen::random_instance(spec)));
    spec.seed = 43;
    const auto other = gen::random_instance(spec);
    spec.seed = 42;
    CHECK_FALSE(same_edges(other, gen::random_instance(spec)));

    spec.simple = true;
    spec.n = 5;
    spec.m = 10;
    CHECK(gen::random_instance(spec).is_simple());
    spec.m = 11;
    CHECK_THROWS_AS(gen::random_instance(spec), InputError);

    gen::Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto x = rng.between(3, 7);
        CHECK((x >= 3 && x <= 7));
    }
}

TEST_CASE("algorithm choice")
{
    const Instance unit = test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}});
    const Instance heavy = test::make(3, {{0, 1, 2, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}});
    const Instance multi = test::make(2, {{0, 1, 2, 1}, {0, 1, 1, 1}});
    SolveRequest r;
    CHECK(choose_algorithm(unit, r) == Algo::Binary);
    CHECK(choose_algorithm(heavy, r) == Algo::Heavy);
    CHECK(choose_algorithm(multi, r) == Algo::Dp);
    r.heavy_threshold = 0;
    CHECK(choose_algorithm(heavy, r) == Algo::Dp);
    r = {};
    r.problem = Problem::EFX;
    CHECK(choose_algorithm(unit, r) == Algo::Dp);
    r.algo = Algo::Heavy;
    CHECK_THROWS_AS(choose_algorithm(unit, r), InputError);
    r = {};
    r.algo = Algo::Binary;
    CHECK_THROWS_AS(choose_algorithm(heavy, r), InputError);
    r.algo = Algo::Heavy;
    CHECK_THROWS_AS(choose_algorithm(multi, r), InputError);

    CHECK(parse_problem("efx-mc") == Problem::EFXMinCharity);
    CHECK(parse_algo("dp") == Algo::Dp);
    CHECK_THROWS_AS(parse_problem("nope"), InputError);
    CHECK_THROWS_AS(parse_algo("nope"), InputError);
}

TEST_CASE("every algorithm agrees through solve")
{
    for (int round = 0; round < 80; ++round) {
        gen::RandomSpec spec;
        spec.n = 2 + round % 5;
        spec.m = std::min<std::size_t>(spec.n * (spec.n - 1) / 2, round % 7);
        spec.max_weight = round % 2 ? 1 : 3;
        spec.simple = true;
        spec.seed = 3000 + round;
        const Instance inst = gen::random_instance(spec);
        for (Problem p : {Problem::EF, Problem::EFX, Problem::EFMinCharity, Problem::EFXMinCharity}) {
            SolveRequest req;
            req.problem = p;
            req.algo = Algo::Brute;
            const auto truth = solve(inst, req);
            for (Algo a : {Algo::Auto, Algo::Binary, Algo::Heavy, Algo::Dp}) {
                req.algo = a;
                SolveOutcome got;
                try {
                    got = solve(inst, req);
                } catch (const InputError &) {
                    continue;  // not applicable
                }
                CHECK(got.report.decision == truth.report.decision);
                if (is_min_charity(p))
                    CHECK(*got.report.min_charity == *truth.report.min_charity);
                if (got.report.certificate) {
                    const auto v = verify(inst, *got.report.certificate, fairness_of(p));
                    CHECK(v.ok);
                    if (!is_min_charity(p))
                        CHECK(v.charity == 0);
                } else {
                    CHECK_FALSE(got.report.decision);
                    CHECK_FALSE(is_min_charity(p));
                }
            }
        }
    }
}

TEST_CASE("json report")
{
    const Instance one = test::make(2, {{0, 1, 1, 1}});
    SolveRequest req;
    req.problem = Problem::EFMinCharity;
    req.algo = Algo::Dp;
    const auto out = solve(one, req);
    const auto j = nlohmann::json::parse(report_json(out, req.problem, true));
    CHECK(j["algorithm"] == "dp");
    CHECK(j["problem"] == "ef-mc");
    CHECK(j["decision"] == false);
    CHECK(j["min_charity"] == 1);
    CHECK(j["certificate"] == nlohmann::json::array({"c"}));
    CHECK(j["stats"].contains("width"));

    req.problem = Problem::EF;
    const auto no = solve(one, req);
    const auto k = nlohmann::json::parse(report_json(no, req.problem, true));
    CHECK(k["min_charity"].is_null());
    CHECK_FALSE(k.contains("certificate"));
}
