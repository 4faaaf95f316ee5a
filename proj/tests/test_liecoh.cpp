#include "doctest.h"
#include "hk/liecoh.hpp"

#include <set>

using namespace hk;

namespace {

std::size_t inversion_profile(int n, int len)
{
    RootSystem rs('A', n - 1);
    std::size_t c = 0;
    for (const auto& w : rs.weyl()) c += w.length == len;
    return c;
}

bool per_weight_is_multiplicity_free(const LieCohomology& h)
{
    for (const auto& [key, d] : h.observed)
        if (d != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("brackets of n come from matrix commutators")
{
    for (int n = 2; n <= 4; ++n) {
        NilpotentLie lie(n);
        CHECK(lie.dim() == static_cast<std::size_t>(n * (n - 1) / 2));
        for (std::size_t a = 0; a < lie.dim(); ++a)
            for (std::size_t b = 0; b < lie.dim(); ++b) {
                // commutator of elementary matrices, computed entrywise
                std::vector<int> m(n * n, 0);
                auto [i, j] = lie.basis[a];
                auto [k, l] = lie.basis[b];
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z) {
                            m[x * n + y] += (x == i && z == j) * (z == k && y == l);
                            m[x * n + y] -= (x == k && z == l) * (z == i && y == j);
                        }
                auto [target, coeff] = lie.bracket(a, b);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) {
                        int expect = 0;
                        if (coeff != 0 && lie.basis[target].i == x && lie.basis[target].j == y) expect = coeff;
                        CHECK(m[x * n + y] == expect);
                    }
                if (coeff != 0) {
                    Weight s = lie.weights[a];
                    for (int t = 0; t < n - 1; ++t) s.c[t] += lie.weights[b].c[t];
                    CHECK(s == lie.weights[target]);
                }
            }
    }
}

TEST_CASE("Lie action extracted from divided powers")
{
    auto triv = build_simple_module(3, 3, Weight{{0, 0}});
    for (const auto& e : lie_action_from_group(triv, NilpotentLie(3))) CHECK(e.is_zero());

    auto std2 = build_simple_module(2, 3, Weight{{1}});
    auto e = lie_action_from_group(std2, NilpotentLie(2));
    REQUIRE(e.size() == 1);
    std::size_t ones = 0;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK((e[0].at(r, c) == 0 || e[0].at(r, c) == 1));
            ones += e[0].at(r, c) == 1;
        }
    CHECK(ones == 1);

    GroupRep bare = triv;
    bare.divided.clear();
    CHECK_THROWS(lie_action_from_group(bare, NilpotentLie(3)));
}

TEST_CASE("Steinberg e_alpha matrices satisfy the commutator table")
{
    for (int n : {3, 4}) {
        std::uint32_t p = 2;
        Weight st{std::vector<int>(n - 1, 1)};
        auto v = build_simple_module(n, p, st);
        NilpotentLie lie(n);
        auto e = lie_action_from_group(v, lie);
        for (std::size_t a = 0; a < lie.dim(); ++a) {
            CHECK(e[a].power(p).is_zero());
            for (std::size_t b = 0; b < lie.dim(); ++b) {
                Matrix comm = e[a] * e[b] - e[b] * e[a];
                auto [target, coeff] = lie.bracket(a, b);
                Matrix expect(p, v.dim, v.dim);
                if (coeff != 0) expect.add_block(0, 0, e[target], coeff);
                CHECK(comm == expect);
            }
        }
    }
}

TEST_CASE("CE complex preserves weights and squares to zero")
{
    for (auto [n, p, mu] : std::vector<std::tuple<int, std::uint32_t, Weight>>{
             {2, 5, Weight{{3}}}, {3, 3, Weight{{1, 0}}}, {3, 2, Weight{{1, 1}}}, {3, 5, Weight{{2, 1}}}}) {
        auto v = build_simple_module(n, p, mu);
        CEComplex ce = build_ce_complex(v);
        for (std::size_t k = 0; k + 1 < ce.complex.d.size(); ++k)
            CHECK((ce.complex.d[k + 1] * ce.complex.d[k]).is_zero());
        for (std::size_t k = 0; k < ce.complex.d.size(); ++k)
            for (std::size_t r = 0; r < ce.complex.d[k].rows(); ++r)
                for (std::size_t c = 0; c < ce.complex.d[k].cols(); ++c)
                    if (ce.complex.d[k].at(r, c)) CHECK(ce.weights[k + 1][r] == ce.weights[k][c]);
        for (std::size_t k = 0; k < ce.subsets.size(); ++k)
            for (std::size_t s = 1; s < ce.subsets[k].size(); ++s) CHECK(ce.subsets[k][s - 1] < ce.subsets[k][s]);
    }
}

TEST_CASE("rank one: H^0 and H^1 are lines at the expected weights")
{
    auto v = build_simple_module(2, 2, Weight{{0}});
    auto h = ce_cohomology(v);
    CHECK(h.total == std::vector<std::size_t>{1, 1});
    CHECK(h.observed.count({1, Weight{{2}}}) == 1);
    CHECK(h.matches);
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int k = 0; k < static_cast<int>(p); ++k) {
            auto hk = ce_cohomology(build_simple_module(2, p, Weight{{k}}));
            CHECK(hk.in_bottom_alcove);
            CHECK(hk.total == std::vector<std::size_t>{1, 1});
            // H^0 = invariants of n, the lowest weight; H^1 sits at s.(-k) = k + 2
            CHECK(hk.observed.count({0, Weight{{-k}}}) == 1);
            CHECK(hk.observed.count({1, Weight{{k + 2}}}) == 1);
            CHECK(hk.matches);
        }
}

TEST_CASE("rank two cohomology matches the Weyl length profile")
{
    std::vector<std::size_t> profile;
    for (int l = 0; l <= 3; ++l) profile.push_back(inversion_profile(3, l));
    CHECK(profile == std::vector<std::size_t>{1, 2, 2, 1});
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto h = ce_cohomology(build_simple_module(3, p, Weight{{0, 0}}));
        CHECK(h.total == profile);
        CHECK(h.matches == h.in_bottom_alcove);
        if (h.in_bottom_alcove) CHECK(per_weight_is_multiplicity_free(h));
    }
    auto h = ce_cohomology(build_simple_module(3, 5, Weight{{1, 1}}));
    CHECK(h.in_bottom_alcove);
    CHECK(h.total == profile);
    CHECK(h.matches);
    CHECK(per_weight_is_multiplicity_free(h));
}

TEST_CASE("Euler characteristic of cochains equals that of cohomology")
{
    for (auto [p, mu] : std::vector<std::pair<std::uint32_t, Weight>>{
             {5, Weight{{1, 1}}}, {2, Weight{{1, 1}}}, {3, Weight{{2, 0}}}, {3, Weight{{1, 1}}}}) {
        auto h = ce_cohomology(build_simple_module(3, p, mu));
        long chi_c = 0, chi_h = 0;
        for (std::size_t i = 0; i < h.total.size(); ++i) {
            long s = i % 2 ? -1 : 1;
            chi_c += s * static_cast<long>(h.cochain_dims[i]);
            chi_h += s * static_cast<long>(h.total[i]);
        }
        CHECK(chi_c == chi_h);
    }
}

TEST_CASE("outside the bottom alcove the verdict is flagged")
{
    // Steinberg at p = 2: <rho + rho, highest coroot> = 4 > 2
    auto h = ce_cohomology(build_simple_module(3, 2, Weight{{1, 1}}));
    CHECK_FALSE(h.in_bottom_alcove);
}

TEST_CASE("witness cocycles are closed and nonzero")
{
    for (auto [p, mu] : std::vector<std::pair<std::uint32_t, Weight>>{{5, Weight{{1, 1}}}, {5, Weight{{0, 0}}}, {3, Weight{{1, 0}}}}) {
        auto v = build_simple_module(3, p, mu);
        CEComplex ce = build_ce_complex(v);
        RootSystem rs('A', 2);
        Weight low = rs.act(rs.longest_index(), mu);
        for (std::size_t w = 0; w < rs.weyl_order(); ++w) {
            WitnessCheck wc = witness_cocycle(v, ce, w);
            CHECK(wc.degree == rs.weyl()[w].length);
            CHECK(wc.weight == rs.dot_action(w, low));
            CHECK(wc.closed);
            CHECK(wc.nonzero_class);
        }
    }
}

TEST_CASE("coinvariant lines sit at extremal weights")
{
    RootSystem rs('A', 2);
    auto triv = build_simple_module(3, 3, Weight{{0, 0}});
    CHECK(coinvariant_line(triv, rs.longest_index()).weight == Weight{{0, 0}});

    for (Weight mu : {Weight{{1, 0}}, Weight{{1, 1}}}) {
        auto v = build_simple_module(3, 5, mu);
        std::multiset<Weight> all(v.weights.begin(), v.weights.end());
        Weight low = rs.act(rs.longest_index(), mu);
        CHECK(coinvariant_line(v, rs.identity_index()).weight == low);
        for (std::size_t w = 0; w < rs.weyl_order(); ++w) {
            auto line = coinvariant_line(v, w);
            CHECK(line.weight == rs.act(w, low));
            CHECK(all.count(line.weight) == 1);
            CHECK(line.projection.rows() == 1);
        }
    }
}
