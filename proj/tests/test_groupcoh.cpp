#include "doctest.h"
#include "hk/groupcoh.hpp"

#include <algorithm>
#include <random>

using namespace hk;

namespace {

NormalizedCochain random_normalized(const FiniteGroup& g, int degree, std::mt19937_64& rng)
{
    NormalizedCochain c = zero_cochain(g, degree);
    for (std::size_t t = 0; t < c.values.size(); ++t) c.values[t] = rng() % g.p;
    // zero out any tuple containing the identity
    for (std::size_t t = 0; t < c.values.size(); ++t) {
        std::size_t rest = t;
        for (int k = 0; k < degree; ++k, rest /= g.order())
            if (rest % g.order() == g.identity) c.values[t] = 0;
    }
    return c;
}

}  // namespace

TEST_CASE("group orders and subgroup orders")
{
    for (std::uint32_t p : {2u, 3u})
        for (int m : {1, 2}) {
            const std::size_t q = p == 2 ? (1u << m) : (m == 1 ? 3 : 9);
            CHECK(unipotent_quotient(p, m).order() == q * q * q);
            CHECK(unipotent_quotient(p, m, U3Subgroup::N12).order() == q * q);
            CHECK(unipotent_quotient(p, m, U3Subgroup::N23).order() == q * q);
            CHECK(unipotent_quotient(p, m, U3Subgroup::N12_13).order() == q);
            CHECK(unipotent_quotient(p, m, U3Subgroup::N23_13).order() == q);
        }
    FiniteGroup g = unipotent_quotient(2, 2);
    // associativity and the (13) entry rule
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) {
            const U3Elt& a = g.elts[i];
            const U3Elt& b = g.elts[j];
            const U3Elt& ba = g.elts[g.product(j, i)];
            CHECK(ba.a13 == (a.a13 + b.a13 + b.a12 * a.a23) % 4);
            for (std::size_t k = 0; k < g.order(); k += 7)
                CHECK(g.product(g.product(i, j), k) == g.product(i, g.product(j, k)));
        }
}

TEST_CASE("coboundary basics")
{
    FiniteGroup g = unipotent_quotient(2, 2);
    CHECK(std::all_of(coboundary(zero_cochain(g, 1), g).values.begin(), coboundary(zero_cochain(g, 1), g).values.end(),
                      [](i64 v) { return v == 0; }));
    auto da = coboundary(tabulate1(g, alpha12), g);
    for (i64 v : da.values) CHECK(v == 0);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        auto b1 = random_normalized(g, 1, rng);
        auto db1 = coboundary(b1, g);
        CHECK(db1.is_normalized(g.identity));
        for (i64 v : coboundary(db1, g).values) CHECK(v == 0);
        auto b2 = random_normalized(g, 2, rng);
        auto db2 = coboundary(b2, g);
        CHECK(db2.is_normalized(g.identity));
    }
}

TEST_CASE("coboundaries round-trip through both solvers")
{
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u}) {
        FiniteGroup g = unipotent_quotient(p, p == 2 ? 2 : 1);
        for (int trial = 0; trial < 3; ++trial) {
            auto b = random_normalized(g, 1, rng);
            auto c = coboundary(b, g);
            auto lin = solve_coboundary_linear(c, g);
            auto prop = solve_coboundary_propagate(c, g);
            REQUIRE(lin.coboundary);
            REQUIRE(prop.coboundary);
            CHECK(coboundary(NormalizedCochain{1, g.order(), g.p, lin.witness}, g).values == c.values);
            CHECK(coboundary(NormalizedCochain{1, g.order(), g.p, prop.witness}, g).values == c.values);
        }
        auto g1 = tabulate2(g, gamma1);
        CHECK_FALSE(solve_coboundary_linear(g1, g).coboundary);
        CHECK_FALSE(solve_coboundary_propagate(g1, g).coboundary);
    }
}

TEST_CASE("Z1 is Hom(G, F_p) of dimension 2")
{
    for (std::uint32_t p : {2u, 3u})
        for (int m : {1, 2}) CHECK(h1_dimension(unipotent_quotient(p, m)) == 2);
    // abelian (Z/p^m)^2
    CHECK(h1_dimension(unipotent_quotient(2, 2, U3Subgroup::N12)) == 2);
    CHECK(h1_dimension(unipotent_quotient(3, 2, U3Subgroup::N23)) == 2);
    CHECK(h1_dimension(unipotent_quotient(2, 3, U3Subgroup::N12_13)) == 1);
}

TEST_CASE("U_3 cocycle suite at p = 2, m = 2")
{
    U3SuiteReport r = verify_u3_suite(2, 2);
    for (const auto& it : r.items) {
        INFO(it.name << " " << it.detail);
        CHECK(it.passed);
    }
    CHECK(r.all_passed());

    // gamma2 restricted to N(12) vanishes there; the witness reproduces it
    FiniteGroup g = unipotent_quotient(2, 2);
    FiniteGroup n12 = unipotent_quotient(2, 2, U3Subgroup::N12);
    auto c = restrict_to(tabulate2(g, gamma2), g, n12);
    REQUIRE(r.gamma2_on_n12_witness.size() == n12.order());
    CHECK(coboundary(NormalizedCochain{1, n12.order(), 2, r.gamma2_on_n12_witness}, n12).values == c.values);
}

TEST_CASE("U_3 cocycle suite at p = 3 by sampling")
{
    U3SuiteOptions opt;
    opt.seed = 5;
    U3SuiteReport r = verify_u3_suite(3, 2, opt);
    for (const auto& it : r.items) {
        INFO(it.name << " " << it.detail);
        CHECK(it.passed);
    }
}

TEST_CASE("gamma formulas are well defined on Z/p^2")
{
    for (i64 p : {2, 3}) {
        const i64 q = p * p;
        for (i64 x = 0; x < q; ++x)
            for (i64 y = 0; y < q; ++y)
                for (i64 z = 0; z < q; ++z) {
                    U3Elt a{x, y, z}, b{z, x, y};
                    U3Elt a2{x + q, y + 2 * q, z + q}, b2{z + 3 * q, x, y + q};
                    CHECK(gamma1(a, b, p) == gamma1(a2, b2, p));
                    CHECK(gamma2(a, b, p) == gamma2(a2, b2, p));
                }
    }
}

TEST_CASE("homomorphisms of Z/p^m vanish on pZ/p^m")
{
    CHECK(restriction_zero_check(2, 2, 2));
    CHECK(restriction_zero_check(3, 2, 3));
    CHECK(restriction_zero_check(2, 3, 2));
    CHECK_FALSE(restriction_zero_check(2, 2, 1));
    CHECK_FALSE(restriction_zero_check(3, 2, 1));
}
