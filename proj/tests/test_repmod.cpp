#include "doctest.h"
#include "hk/repmod.hpp"

#include <map>
#include <set>

using namespace hk;

namespace {

// Sym^k of the standard SL_2-module: x_{10}(1) sends e0 -> e0 + e1, so the
// monomial e0^a e1^(k-a) goes to sum_b C(a,b) e0^b e1^(k-b).
Matrix sym_power_lower(int k, std::uint32_t p)
{
    Matrix m(p, k + 1, k + 1);
    for (int a = 0; a <= k; ++a) {
        i64 binom = 1;
        for (int b = 0; b <= a; ++b) {
            m.set(b, a, binom);
            binom = binom * (a - b) / (b + 1);
        }
    }
    return m;
}

std::vector<std::size_t> unipotent_profile(const Matrix& x)
{
    Matrix n = x - Matrix::identity(x.characteristic(), x.rows());
    std::vector<std::size_t> ranks;
    Matrix pw = Matrix::identity(x.characteristic(), x.rows());
    for (std::size_t t = 0; t <= x.rows(); ++t) {
        ranks.push_back(rank(pw));
        pw = pw * n;
    }
    return ranks;
}

std::multiset<Weight> weight_multiset(const GroupRep& v) { return {v.weights.begin(), v.weights.end()}; }

}  // namespace

TEST_CASE("SL2 simple modules match symmetric powers")
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (int k = 0; k < static_cast<int>(p); ++k) {
            GroupRep v = build_simple_module(2, p, Weight{{k}});
            CHECK(v.dim == static_cast<std::size_t>(k + 1));
            std::multiset<Weight> expected;
            for (int a = 0; a <= k; ++a) expected.insert(Weight{{k - 2 * a}});
            CHECK(weight_multiset(v) == expected);
            CHECK(unipotent_profile(v.x_root(1, 0)) == unipotent_profile(sym_power_lower(k, p)));
            CHECK(unipotent_profile(v.x_root(0, 1)) == unipotent_profile(sym_power_lower(k, p)));
        }
}

TEST_CASE("Steinberg dimensions")
{
    CHECK(build_simple_module(3, 2, Weight{{1, 1}}).dim == 8);
    CHECK(build_simple_module(3, 3, Weight{{2, 2}}).dim == 27);
    CHECK(build_simple_module(2, 5, Weight{{4}}).dim == 5);
    CHECK(build_simple_module(4, 2, Weight{{1, 1, 1}}).dim == 64);
}

TEST_CASE("known small dimensions")
{
    // standard, adjoint in characteristic not dividing n, and its p | n quotient
    CHECK(build_simple_module(3, 5, Weight{{1, 0}}).dim == 3);
    CHECK(build_simple_module(3, 5, Weight{{0, 1}}).dim == 3);
    CHECK(build_simple_module(3, 5, Weight{{1, 1}}).dim == 8);
    CHECK(build_simple_module(3, 3, Weight{{1, 1}}).dim == 7);
    CHECK(build_simple_module(4, 3, Weight{{0, 1, 0}}).dim == 6);
}

TEST_CASE("trivial module")
{
    GroupRep v = trivial_module(3, 5);
    CHECK(v.dim == 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(v.x_root(i, j) == Matrix::identity(5, 1));
    auto c = irreducibility_check(v);
    CHECK(c.passed);
    CHECK(xi_map(v, 0).matrix == Matrix::identity(5, 1));
    CHECK(xi_map(v, 1).matrix == Matrix::identity(5, 1));
}

TEST_CASE("irreducibility certificate")
{
    GroupRep std2 = build_simple_module(2, 2, Weight{{1}});
    auto c = irreducibility_check(std2);
    CHECK(c.invariants_dim == 1);
    CHECK(c.composite_rank == 1);
    CHECK(c.passed);
    auto bad = irreducibility_check(direct_sum(std2, std2));
    CHECK(bad.invariants_dim == 2);
    CHECK_FALSE(bad.passed);
}

TEST_CASE("module invariants")
{
    struct Case {
        int n;
        std::uint32_t p;
        Weight mu;
    };
    std::vector<Case> cases = {{2, 5, {{3}}}, {3, 2, {{1, 1}}}, {3, 5, {{1, 1}}}, {3, 5, {{2, 1}}},
                               {3, 3, {{2, 0}}}, {4, 2, {{1, 0, 1}}}};
    for (const auto& cs : cases) {
        GroupRep v = build_simple_module(cs.n, cs.p, cs.mu);
        RootSystem rs('A', cs.n - 1);
        CAPTURE(cs.n);
        CAPTURE(cs.p);
        std::map<Weight, int> mult;
        for (const auto& w : v.weights) ++mult[w];
        int total = 0;
        for (auto& [w, m] : mult) {
            total += m;
            for (std::size_t x = 0; x < rs.weyl_order(); ++x) CHECK(mult[rs.act(x, w)] == m);
        }
        CHECK(total == static_cast<int>(v.dim));
        CHECK(mult[cs.mu] == 1);
        for (int i = 0; i < cs.n; ++i)
            for (int j = 0; j < cs.n; ++j) {
                if (i == j) continue;
                const Matrix& x = v.x_root(i, j);
                CHECK(x.power(cs.p) == Matrix::identity(cs.p, v.dim));
                for (std::uint32_t t = 0; t < cs.p; ++t) {
                    Matrix xt = Matrix::identity(cs.p, v.dim);
                    i64 tp = 1;
                    for (int s = 1; s <= static_cast<int>(v.divided[i * cs.n + j].size()); ++s) {
                        tp = tp * t % cs.p;
                        Matrix e = v.e_root(i, j, s);
                        Matrix scaled(cs.p, v.dim, v.dim);
                        scaled.add_block(0, 0, e, tp);
                        xt = xt + scaled;
                    }
                    CHECK(xt == x.power(t));
                }
            }
        if (rs.bottom_alcove_check(cs.mu, static_cast<int>(cs.p))) CHECK(root_string_bound(v));
    }
}

TEST_CASE("root strings stay below p in the bottom alcove")
{
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int k = 0; k < static_cast<int>(p); ++k) CHECK(root_string_bound(build_simple_module(2, p, Weight{{k}})));
    CHECK(root_string_bound(build_simple_module(3, 5, Weight{{1, 1}})));
    CHECK(root_string_bound(build_simple_module(3, 3, Weight{{0, 0}})));
}

TEST_CASE("subgroup invariants")
{
    GroupRep v = build_simple_module(3, 5, Weight{{1, 1}});
    CHECK(subgroup_invariants(v, {}).cols() == v.dim);
    std::vector<RootPair> neg = {{1, 0}, {2, 0}, {2, 1}};
    Matrix low = subgroup_invariants(v, neg);
    REQUIRE(low.cols() == 1);
    for (std::size_t a = 0; a < v.dim; ++a)
        if (low.at(a, 0)) CHECK(v.weights[a] == Weight{{-1, -1}});

    GroupRep std2 = build_simple_module(2, 3, Weight{{1}});
    Matrix fixed = subgroup_invariants(std2, {{1, 0}});
    REQUIRE(fixed.cols() == 1);
    for (std::size_t a = 0; a < 2; ++a)
        if (fixed.at(a, 0)) CHECK(std2.weights[a] == Weight{{-1}});
}

TEST_CASE("xi maps are projectors onto opposite-radical invariants")
{
    for (std::uint32_t p : {3u, 5u})
        for (int k = 0; k < static_cast<int>(p); ++k) {
            GroupRep v = build_simple_module(2, p, Weight{{k}});
            CHECK(xi_map(v, 0).rank == 1);
        }
    GroupRep st = build_simple_module(3, 2, Weight{{1, 1}});
    for (int k = 0; k < 2; ++k) {
        auto xi = xi_map(st, k);
        CHECK(xi.matrix * xi.matrix == xi.matrix);
        Matrix inv = subgroup_invariants(st, opposite_radical_roots(3, k));
        CHECK(rank(xi.matrix) == inv.cols());
        // image is fixed by N_{-lambda}, kernel contains the augmentation of N_lambda
        for (auto r : opposite_radical_roots(3, k)) CHECK(st.x_root(r.i, r.j) * xi.matrix == xi.matrix);
        for (auto r : radical_roots(3, k)) CHECK(xi.matrix * st.x_root(r.i, r.j) == xi.matrix);
    }
}
