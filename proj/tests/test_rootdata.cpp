#include "doctest.h"
#include "hk/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>

using namespace hk;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Standard counts: positive roots, Weyl group order, Coxeter number.
struct Counts {
    std::size_t pos;
    std::size_t order;
    int h;
};

Counts standard_counts(char s, int r)
{
    switch (s) {
    case 'A': return {std::size_t(r * (r + 1) / 2), std::size_t(factorial(r + 1)), r + 1};
    case 'B':
    case 'C': return {std::size_t(r * r), std::size_t((1L << r) * factorial(r)), 2 * r};
    case 'D': return {std::size_t(r * (r - 1)), std::size_t((1L << (r - 1)) * factorial(r)), 2 * r - 2};
    default: return {6, 12, 6};
    }
}

}  // namespace

TEST_CASE("root system sizes match the classification")
{
    std::vector<std::pair<char, int>> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3},
                                               {'C', 3}, {'D', 4}, {'G', 2}, {'B', 4}, {'C', 4}};
    for (auto [s, r] : types) {
        RootSystem rs(s, r);
        Counts c = standard_counts(s, r);
        CAPTURE(rs.label());
        CHECK(rs.num_positive() == c.pos);
        CHECK(rs.weyl_order() == c.order);
        CHECK(rs.coxeter_number() == c.h);
    }
}

TEST_CASE("rho is half the sum of positive roots and pairs to one with simple coroots")
{
    for (auto [s, r] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 2}, {'D', 4}, {'G', 2}}) {
        RootSystem rs(s, r);
        Weight sum{IntVec(r, 0)};
        for (const auto& a : rs.positive_roots()) {
            Weight w = rs.root_as_weight(a);
            for (int i = 0; i < r; ++i) sum.c[i] += w.c[i];
        }
        CHECK(sum == rs.two_rho());
        for (int i = 0; i < r; ++i) {
            IntVec e(r, 0);
            e[i] = 1;
            CHECK(rs.pair(rs.rho(), e) == 1);
        }
        CHECK(rs.coxeter_number() == rs.pair(rs.rho(), rs.highest_coroot()) + 1);
    }
}

TEST_CASE("small examples")
{
    RootSystem a1('A', 1), a2('A', 2), a3('A', 3);
    CHECK(a1.num_positive() == 1);
    CHECK(a1.weyl_order() == 2);
    CHECK(a1.coxeter_number() == 2);
    CHECK(a2.coxeter_number() == 3);
    CHECK(a3.coxeter_number() == 4);
    CHECK_THROWS(RootSystem('E', 6));
    CHECK_THROWS(RootSystem('G', 3));
    CHECK_THROWS(RootSystem('A', 6));  // |W| = 5040 exceeds the cap
}

TEST_CASE("type A lengths are inversion counts")
{
    for (int r = 1; r <= 4; ++r) {
        RootSystem rs('A', r);
        std::map<int, int> by_length, by_inversions;
        for (std::size_t w = 0; w < rs.weyl_order(); ++w) {
            auto perm = rs.permutation(w);
            CHECK(inversion_count(perm) == rs.weyl()[w].length);
            ++by_length[rs.weyl()[w].length];
        }
        std::vector<int> perm(r + 1);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            ++by_inversions[inversion_count(perm)];
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(by_length == by_inversions);
    }
}

TEST_CASE("inverse and longest element")
{
    RootSystem rs('B', 3);
    for (std::size_t w = 0; w < rs.weyl_order(); ++w) {
        CHECK(rs.multiply(w, rs.inverse(w)) == rs.identity_index());
        CHECK(rs.weyl()[rs.inverse(w)].length == rs.weyl()[w].length);
    }
    CHECK(static_cast<std::size_t>(rs.weyl()[rs.longest_index()].length) == rs.num_positive());
}

TEST_CASE("dot action")
{
    RootSystem a1('A', 1), a2('A', 2);
    Weight zero1{{0}};
    CHECK(a1.dot_action(0, zero1) == zero1);
    CHECK(a1.dot_action(1, zero1) == Weight{{2}});  // s(-rho)+rho = alpha
    Weight zero2{{0, 0}};
    auto w0 = a2.longest_index();
    CHECK(a2.dot_action(w0, a2.act(w0, zero2)) == a2.two_rho());

    for (int r = 1; r <= 3; ++r) {
        RootSystem rs('A', r);
        Weight eta{IntVec(r, 0)};
        for (int i = 0; i < r; ++i) eta.c[i] = 2 * i - 1;
        for (std::size_t v = 0; v < rs.weyl_order(); ++v)
            for (std::size_t w = 0; w < rs.weyl_order(); ++w)
                CHECK(rs.dot_action(rs.multiply(v, w), eta) == rs.dot_action(v, rs.dot_action(w, eta)));
    }
}

TEST_CASE("dominance order")
{
    RootSystem a2('A', 2);
    Coweight zero{{0, 0}}, l1{{1, 0}}, l2{{0, 1}}, l12{{1, 1}};
    CHECK(a2.dominance_leq(l1, l1));
    CHECK(a2.dominance_leq(zero, l12));  // l1 + l2 = coroot_1 + coroot_2
    CHECK_FALSE(a2.dominance_leq(l1, l2));
    CHECK_FALSE(a2.dominance_leq(l2, l1));

    std::vector<Coweight> window;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) window.push_back(Coweight{{a, b}});
    for (const auto& x : window)
        for (const auto& y : window) {
            if (a2.dominance_leq(x, y) && a2.dominance_leq(y, x)) CHECK(x == y);
            for (const auto& z : window)
                if (a2.dominance_leq(x, y) && a2.dominance_leq(y, z)) CHECK(a2.dominance_leq(x, z));
        }
}

TEST_CASE("bottom alcove")
{
    RootSystem a1('A', 1), a2('A', 2), a3('A', 3);
    CHECK(a1.bottom_alcove_check(Weight{{0}}, 2));
    CHECK_FALSE(a2.bottom_alcove_check(Weight{{1, 1}}, 2));
    CHECK_FALSE(a3.bottom_alcove_check(Weight{{0, 0, 0}}, 2));
    // mu = 0 is in the bottom alcove iff p >= h - 1
    for (int r = 1; r <= 4; ++r) {
        RootSystem rs('A', r);
        for (int p : {2, 3, 5, 7})
            CHECK(rs.bottom_alcove_check(Weight{IntVec(r, 0)}, p) == (p >= rs.coxeter_number() - 1));
    }
}
