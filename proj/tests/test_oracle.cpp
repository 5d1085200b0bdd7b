#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "fairorient/oracle.hpp"
#include "fairorient/random.hpp"
#include "helpers.hpp"

using namespace fairorient;

namespace {

const Instance unit_edge = test::make(2, {{0, 1, 1, 1}});
const Instance three_parallel = test::make(2, {{0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}});
const Instance path3 = test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}});

}  // namespace

TEST_CASE("brute_exists examples")
{
    CHECK_FALSE(oracle::brute_exists(unit_edge, Fairness::EF).exists);
    const auto efx = oracle::brute_exists(unit_edge, Fairness::EFX);
    CHECK(efx.exists);
    REQUIRE(efx.certificate);
    CHECK(verify(unit_edge, *efx.certificate, Fairness::EFX).ok);
    CHECK_FALSE(oracle::brute_exists(three_parallel, Fairness::EF).exists);
}

TEST_CASE("brute_min_charity examples")
{
    CHECK(oracle::brute_min_charity(unit_edge, Fairness::EF).min_charity == 1);
    CHECK(oracle::brute_min_charity(path3, Fairness::EF).min_charity == 2);
    CHECK(oracle::brute_min_charity(three_parallel, Fairness::EF).min_charity == 1);
    // the counting oracle agrees
    CHECK(test::naive_min_charity(unit_edge, Fairness::EF) == 1);
    CHECK(test::naive_min_charity(path3, Fairness::EF) == 2);
    CHECK(test::naive_min_charity(three_parallel, Fairness::EF) == 1);
}

TEST_CASE("caps are refused")
{
    gen::RandomSpec spec;
    spec.n = 4;
    spec.m = 21;
    const Instance big = gen::random_instance(spec);
    CHECK_THROWS_AS(oracle::brute_exists(big, Fairness::EF), RefusalError);
    CHECK_THROWS_AS(oracle::brute_min_charity(big, Fairness::EF), RefusalError);
    oracle::Options opt;
    opt.exists_cap = 21;
    CHECK_NOTHROW(oracle::brute_exists(test::make(2, {{0, 1, 1, 1}}), Fairness::EF, opt));
}

TEST_CASE("certificate is the numerically smallest optimum")
{
    // path 0-1-2 cannot keep either edge
    const auto r = oracle::brute_min_charity(path3, Fairness::EF);
    CHECK(r.certificate.charity_count() == 2);
    // triangle: the smallest full EF orientation in base-2 order
    const Instance tri = test::make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 1, 1}});
    const auto e = oracle::brute_exists(tri, Fairness::EF);
    REQUIRE(e.certificate);
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < 3; ++i)
        code |= static_cast<std::uint64_t>((*e.certificate)[static_cast<EdgeId>(i)] == Assignment::ToV) << i;
    std::uint64_t smallest = 8;
    for (std::uint64_t c = 0; c < 8 && smallest == 8; ++c) {
        std::vector<Assignment> a(3);
        for (std::size_t i = 0; i < 3; ++i)
            a[i] = (c >> i) & 1 ? Assignment::ToV : Assignment::ToU;
        if (test::naive_fair(tri, PartialOrientation(a), Fairness::EF))
            smallest = c;
    }
    CHECK(code == smallest);
}

TEST_CASE("enumeration examples")
{
    oracle::EnumerationSpec s;
    s.n_max = 2;
    s.m_max = 1;
    s.weight_max = 1;
    s.allow_zero_zero = false;
    const auto list = oracle::enumerate_small_instances(s);
    // the edgeless instance plus (1,0), (0,1), (1,1)
    REQUIRE(list.size() == 4);
    std::set<std::pair<Weight, Weight>> seen;
    for (const auto &inst : list) {
        if (inst.edge_count() == 1)
            seen.insert({inst.edges()[0].w_u, inst.edges()[0].w_v});
        else
            CHECK(inst.edge_count() == 0);
    }
    CHECK(seen == std::set<std::pair<Weight, Weight>>{{1, 0}, {0, 1}, {1, 1}});

    oracle::EnumerationSpec one;
    one.n_max = 1;
    one.m_max = 3;
    const auto only = oracle::enumerate_small_instances(one);
    REQUIRE(only.size() == 1);
    CHECK(only[0].edge_count() == 0);
    CHECK(only[0].vertex_count() == 1);
}

namespace {

using Key = std::vector<std::tuple<Vertex, Vertex, Weight, Weight>>;

// Every sequence of up to m_max endpoint-and-weight tuples, sorted and put
// in a set: the number of distinct edge multisets.
std::size_t dedup_count(std::size_t n, std::size_t m_max, Weight w_max, bool simple)
{
    std::vector<std::tuple<Vertex, Vertex, Weight, Weight>> types;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            for (Weight a = 0; a <= w_max; ++a)
                for (Weight b = 0; b <= w_max; ++b)
                    types.emplace_back(u, v, a, b);
    std::set<Key> all;
    Key cur;
    std::function<void(std::size_t)> rec = [&](std::size_t left) {
        Key sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        bool ok = true;
        if (simple)
            for (std::size_t i = 1; i < sorted.size(); ++i)
                if (std::get<0>(sorted[i]) == std::get<0>(sorted[i - 1]) &&
                    std::get<1>(sorted[i]) == std::get<1>(sorted[i - 1]))
                    ok = false;
        if (ok)
            all.insert(sorted);
        if (left == 0)
            return;
        for (const auto &t : types) {
            cur.push_back(t);
            rec(left - 1);
            cur.pop_back();
        }
    };
    rec(m_max);
    return all.size();
}

}  // namespace

TEST_CASE("enumeration count matches an independent dedup")
{
    for (auto [n, m, w, simple] : std::vector<std::tuple<std::size_t, std::size_t, Weight, bool>>{
             {2, 2, 1, false}, {3, 2, 1, false}, {3, 3, 1, true}, {3, 2, 2, false}, {4, 2, 1, true}}) {
        oracle::EnumerationSpec s;
        s.n_max = n;
        s.m_max = m;
        s.weight_max = w;
        s.simple = simple;
        const std::size_t expect = dedup_count(n, m, w, simple);
        CHECK(oracle::count_small_instances(s) == expect);
        std::set<Key> streamed;
        const auto produced = oracle::for_each_small_instance(s, [&](const Instance &inst) {
            Key k;
            for (const Edge &e : inst.edges())
                k.emplace_back(e.u, e.v, e.w_u, e.w_v);
            std::sort(k.begin(), k.end());
            streamed.insert(k);
        });
        CHECK(produced == expect);
        CHECK(streamed.size() == expect);
    }
    oracle::EnumerationSpec s;
    s.n_max = 2;
    s.m_max = 2;
    s.weight_max = 1;
    // 4 edge types on one pair, multisets of size 0, 1, 2: 1 + 4 + 10
    CHECK(oracle::count_small_instances(s) == 15);
}

TEST_CASE("enumeration cap")
{
    oracle::EnumerationSpec s;
    s.n_max = 5;
    s.m_max = 8;
    s.weight_max = 3;
    s.cap = 1000;
    CHECK_THROWS_AS(oracle::for_each_small_instance(s, [](const Instance &) {}), RefusalError);
}

TEST_CASE("property: oracle against the counting oracle and its own variants")
{
    for (int round = 0; round < 400; ++round) {
        gen::RandomSpec spec;
        spec.n = 2 + round % 4;
        spec.m = round % 7;
        spec.max_weight = 1 + round % 3;
        spec.seed = 40 + round;
        const Instance inst = gen::random_instance(spec);
        for (auto f : {Fairness::EF, Fairness::EFX}) {
            const auto mc = oracle::brute_min_charity(inst, f);
            CHECK(mc.min_charity == test::naive_min_charity(inst, f));
            CHECK(mc.certificate.charity_count() == mc.min_charity);
            CHECK(test::naive_fair(inst, mc.certificate, f));
            const auto ex = oracle::brute_exists(inst, f);
            CHECK(ex.exists == (mc.min_charity == 0));
            CHECK(ex.exists == test::naive_exists(inst, f));

            oracle::Options plain;
            plain.prune = false;
            oracle::Options par;
            par.parallel = true;
            const auto mc2 = oracle::brute_min_charity(inst, f, plain);
            const auto mc3 = oracle::brute_min_charity(inst, f, par);
            CHECK(mc2.min_charity == mc.min_charity);
            CHECK(mc3.min_charity == mc.min_charity);
            CHECK(mc2.certificate == mc.certificate);
            CHECK(mc3.certificate == mc.certificate);
            const auto ex2 = oracle::brute_exists(inst, f, par);
            CHECK(ex2.exists == ex.exists);
            CHECK(ex2.certificate == ex.certificate);
        }
        CHECK(oracle::brute_min_charity(inst, Fairness::EFX).min_charity <=
              oracle::brute_min_charity(inst, Fairness::EF).min_charity);
    }
}
