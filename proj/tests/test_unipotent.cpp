#include "doctest.h"
#include "hk/unipotent.hpp"

#include <map>
#include <random>
#include <set>

using namespace hk;

namespace {

UnipotentElt random_elt(int n, i64 modulus, std::mt19937_64& rng)
{
    UnipotentElt u(n, modulus);
    for (auto [i, j] : lower_positions(n)) u.set(i, j, static_cast<i64>(rng() % modulus));
    return u;
}

// All elements of N[E] mod p^M.
std::vector<UnipotentElt> subgroup_elements(int n, i64 p, int prec, const IntMat& m)
{
    const i64 mod = int_pow(p, prec);
    auto pos = lower_positions(n);
    std::vector<UnipotentElt> out{UnipotentElt(n, mod)};
    for (auto [i, j] : pos) {
        std::vector<UnipotentElt> next;
        const i64 step = int_pow(p, m[i][j]);
        for (const auto& u : out)
            for (i64 v = 0; v < mod; v += step) {
                UnipotentElt w = u;
                w.set(i, j, v);
                next.push_back(w);
            }
        out.swap(next);
    }
    return out;
}

// Conjugation by diag(p^c_1, ..., p^c_n) on an elementary matrix, read off as
// the exponent of p gained by the (i, j) entry.
IntMat conjugation_oracle(Subset e, int n)
{
    IntVec c(n, 0);
    for (int k = 0; k < n - 1; ++k)
        if (contains(e, k))
            for (int i = 0; i <= k; ++i) ++c[i];
    IntMat m(n, IntVec(n, 0));
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            // gamma^-1 e_ij gamma = p^{c_j - c_i} e_ij
            long val = 1;
            for (int t = 0; t < c[j]; ++t) val *= 2;
            for (int t = 0; t < c[i]; ++t) val /= 2;
            int k = 0;
            while (val > 1) {
                val /= 2;
                ++k;
            }
            m[i][j] = k;
        }
    return m;
}

}  // namespace

TEST_CASE("exponent matrices")
{
    auto m2 = exponent_matrix(0b1, 2);
    CHECK(m2[1][0] == 1);
    auto m3 = exponent_matrix(0b01, 3);
    CHECK(m3[1][0] == 1);
    CHECK(m3[2][0] == 1);
    CHECK(m3[2][1] == 0);
    CHECK(exponent_sum(0b111, 4) == 10);
    CHECK(exponent_sum(0b001, 4) == 3);
    CHECK(exponent_sum(0b010, 4) == 4);
    CHECK(exponent_sum(0b011, 4) == 7);
    CHECK(exponent_sum(0b101, 4) == 6);
    CHECK(required_precision(2) == 2);
    CHECK(required_precision(4) == 4);
    for (int n = 2; n <= 4; ++n)
        for (Subset e = 0; e < (1u << (n - 1)); ++e) {
            CHECK(exponent_matrix(e, n) == conjugation_oracle(e, n));
            for (Subset f = 0; f < (1u << (n - 1)); ++f)
                if ((f & e) == f) {
                    auto a = exponent_matrix(f, n), b = exponent_matrix(e, n);
                    for (auto [i, j] : lower_positions(n)) CHECK(a[i][j] <= b[i][j]);
                }
        }
}

TEST_CASE("coset table sizes")
{
    for (int n = 2; n <= 4; ++n)
        for (i64 p : {2, 3})
            for (Subset e = 0; e < (1u << (n - 1)); ++e) {
                if (n == 4 && p == 3 && e == 0b111) continue;
                CosetTable t(n, p, e, required_precision(n));
                CHECK(t.size() == static_cast<std::size_t>(int_pow(p, exponent_sum(e, n))));
                for (std::size_t k = 0; k < t.size(); k += 1 + t.size() / 50) CHECK(t.index_of(t.rep(k)) == k);
            }
}

TEST_CASE("canonical representatives")
{
    const i64 p = 5;
    auto m = exponent_matrix(0b1, 2);
    UnipotentElt u(2, 25);
    u.set(1, 0, p + 3);
    CHECK(canonical_coset_rep(u, m, p).at(1, 0) == 3);
    UnipotentElt inside(2, 25);
    inside.set(1, 0, 10);
    CHECK(canonical_coset_rep(inside, m, p).is_identity());

    std::mt19937_64 rng(17);
    const int n = 3, prec = required_precision(n);
    const i64 mod = int_pow(2, prec);
    auto mfull = exponent_matrix(0b11, n);
    auto sub = subgroup_elements(n, 2, prec, mfull);
    for (int trial = 0; trial < 30; ++trial) {
        UnipotentElt x = random_elt(n, mod, rng);
        UnipotentElt c = canonical_coset_rep(x, mfull, 2);
        int in_box = 0;
        bool found = false;
        for (const auto& y : sub) {
            UnipotentElt z = x * y;
            bool box = true;
            for (auto [i, j] : lower_positions(n)) box &= z.at(i, j) < int_pow(2, mfull[i][j]);
            if (box) {
                ++in_box;
                found |= z == c;
            }
        }
        CHECK(in_box == 1);
        CHECK(found);
        CHECK(canonical_coset_rep(c, mfull, 2) == c);
    }
    UnipotentElt low(3, 2);
    CHECK_THROWS(canonical_coset_rep(low, mfull, 2));
}

TEST_CASE("coset action")
{
    CosetTable t(2, 3, 0b1, 2);
    UnipotentElt one = UnipotentElt::elementary(2, 9, 1, 0, 1);
    for (std::size_t r = 0; r < t.size(); ++r) {
        auto a = t.act(one, r);
        CHECK(t.rep(a.target).at(1, 0) == (t.rep(r).at(1, 0) + 1) % 3);
        auto id = t.act(UnipotentElt(2, 9), r);
        CHECK(id.target == r);
        CHECK(id.stabilizer.is_identity());
    }
}

TEST_CASE("coset action is a group action with stabilizers in N[E]")
{
    const int n = 3;
    const i64 p = 2;
    const int prec = required_precision(n);
    const i64 mod = int_pow(p, prec);
    for (Subset e = 0; e < 4; ++e) {
        CosetTable t(n, p, e, prec);
        std::vector<UnipotentElt> gens;
        for (auto [i, j] : lower_positions(n)) gens.push_back(UnipotentElt::elementary(n, mod, i, j, 1));
        std::mt19937_64 rng(e);
        for (int s = 0; s < 10; ++s) gens.push_back(random_elt(n, mod, rng));
        for (const auto& u : gens) {
            std::set<std::size_t> image;
            for (std::size_t r = 0; r < t.size(); ++r) {
                auto a = t.act(u, r);
                image.insert(a.target);
                CHECK(t.is_member(a.stabilizer));
                CHECK(t.rep(a.target) * a.stabilizer == u * t.rep(r));
                for (const auto& v : gens) {
                    auto lhs = t.act(u * v, r).target;
                    auto rhs = t.act(u, t.act(v, r).target).target;
                    CHECK(lhs == rhs);
                }
            }
            CHECK(image.size() == t.size());
        }
    }
}

TEST_CASE("fibers of N/N[E'] -> N/N[E]")
{
    const int n = 3;
    for (i64 p : {2, 3}) {
        const int prec = required_precision(n);
        for (Subset big = 0; big < 4; ++big)
            for (Subset small = 0; small < 4; ++small) {
                if ((small & big) != small) continue;
                CosetTable tb(n, p, big, prec), ts(n, p, small, prec);
                std::map<std::size_t, std::size_t> fiber;
                for (std::size_t r = 0; r < tb.size(); ++r) ++fiber[ts.index_of(ts.canonical(tb.rep(r)))];
                CHECK(fiber.size() == ts.size());
                const auto expected = static_cast<std::size_t>(int_pow(p, exponent_sum(big, n) - exponent_sum(small, n)));
                for (auto& [k, v] : fiber) CHECK(v == expected);
            }
    }
}

TEST_CASE("inverse")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        UnipotentElt u = random_elt(4, 81, rng);
        CHECK((u * u.inverse()).is_identity());
        CHECK((u.inverse() * u).is_identity());
    }
}
