// Normalized-cochain cohomology with trivial F_p coefficients of the finite
// groups U_3(Z/p^m) and their coordinate subgroups.
#pragma once

#include "hk/exactla.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hk {

struct U3Elt {
    i64 a12 = 0, a13 = 0, a23 = 0;
    bool operator==(const U3Elt&) const = default;
};

enum class U3Subgroup { Full, N12, N23, N12_13, N23_13 };

struct FiniteGroup {
    std::uint32_t p = 2;
    i64 modulus = 4;  // p^m
    std::vector<U3Elt> elts;
    std::vector<std::uint32_t> mul;  // mul[i * order + j] = index of elts[i] * elts[j]
    std::size_t identity = 0;
    std::vector<std::size_t> generators;
    std::vector<std::int64_t> slot;  // coordinate code -> index, or -1

    std::size_t order() const { return elts.size(); }
    std::size_t product(std::size_t i, std::size_t j) const { return mul[i * elts.size() + j]; }
    std::optional<std::size_t> index_of(const U3Elt& e) const;
};

// U_3(Z/p^m) or one of the subgroups a12 = 0, a23 = 0, a12 = a13 = 0, a23 = a13 = 0.
FiniteGroup unipotent_quotient(std::uint32_t p, int m, U3Subgroup which = U3Subgroup::Full);
// Elements of g satisfying pred, as a group in its own right.
template <class Pred>
FiniteGroup subgroup_of(const FiniteGroup& g, Pred pred, std::vector<U3Elt> gens);
FiniteGroup subgroup_by_indices(const FiniteGroup& g, const std::vector<std::size_t>& members, const std::vector<U3Elt>& gens);

struct NormalizedCochain {
    int degree = 0;
    std::size_t order = 0;
    std::uint32_t p = 2;
    std::vector<i64> values;  // row-major over degree-tuples of element indices

    i64 at(std::size_t i) const { return values[i]; }
    i64 at(std::size_t i, std::size_t j) const { return values[i * order + j]; }
    i64 at(std::size_t i, std::size_t j, std::size_t k) const { return values[(i * order + j) * order + k]; }
    bool is_normalized(std::size_t identity) const;
};

NormalizedCochain zero_cochain(const FiniteGroup& g, int degree);
NormalizedCochain tabulate1(const FiniteGroup& g, i64 (*f)(const U3Elt&, i64));
NormalizedCochain tabulate2(const FiniteGroup& g, i64 (*f)(const U3Elt&, const U3Elt&, i64));
NormalizedCochain cup(const NormalizedCochain& a, const NormalizedCochain& b);
NormalizedCochain restrict_to(const NormalizedCochain& c, const FiniteGroup& g, const FiniteGroup& h);

// Inhomogeneous differential, trivial coefficients, degree <= 2.
NormalizedCochain coboundary(const NormalizedCochain& c, const FiniteGroup& g);

// Formulas read on coordinates in Z/p^m, values in F_p.
i64 alpha12(const U3Elt& a, i64 p);
i64 alpha23(const U3Elt& a, i64 p);
i64 gamma1(const U3Elt& a, const U3Elt& b, i64 p);
i64 gamma2(const U3Elt& a, const U3Elt& b, i64 p);

// Basis of Z^1 = Hom(G, F_p) as columns over the non-identity elements.
Matrix hom_basis(const FiniteGroup& g);
std::size_t h1_dimension(const FiniteGroup& g);

// Exact check for small groups, seeded sampling above `exhaustive_limit` triples.
bool is_2cocycle(const NormalizedCochain& c, const FiniteGroup& g, std::size_t samples, std::uint64_t seed,
                 std::size_t exhaustive_limit = 50'000'000);

struct CoboundaryResult {
    bool coboundary = false;
    std::vector<i64> witness;        // b on all elements, b(1) = 0, when coboundary
    std::size_t rows_used = 0;
};

// Solves c = db.  Small groups: streaming linear solve over all pairs.
// Large groups: b is propagated from its values on the generators along
// b(gx) = b(g) + b(x) - c(g, x), and each of the p^#gens candidates is
// checked against every pair.  Both are exhaustive.
CoboundaryResult solve_coboundary(const NormalizedCochain& c, const FiniteGroup& g);
CoboundaryResult solve_coboundary_linear(const NormalizedCochain& c, const FiniteGroup& g);
CoboundaryResult solve_coboundary_propagate(const NormalizedCochain& c, const FiniteGroup& g);

// d(gamma1 u alpha12) = 0, exhaustive when |G|^4 <= exhaustive_limit.
bool zeta_is_cocycle(const FiniteGroup& g, const NormalizedCochain& g1, const NormalizedCochain& a12,
                     std::size_t samples, std::uint64_t seed, std::size_t exhaustive_limit = 20'000'000);

// Streaming F_p solve of zeta = dc over normalized 2-cochains c.
struct ZetaSolve {
    bool coboundary = true;
    std::size_t rows = 0;
    std::size_t rank = 0;
};
ZetaSolve zeta_coboundary_solve(const FiniteGroup& g, const NormalizedCochain& g1, const NormalizedCochain& a12);

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct U3SuiteReport {
    std::uint32_t p = 2;
    int m = 2;
    std::vector<CheckItem> items;
    std::vector<i64> gamma2_on_n12_witness;
    bool all_passed() const;
};

struct U3SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 100'000;
    bool zeta_non_coboundary = false;  // p = 2 only
};

U3SuiteReport verify_u3_suite(std::uint32_t p, int m, const U3SuiteOptions& opt = {});

// Every homomorphism Z/p^m -> F_p vanishes on step * Z/p^m.
bool restriction_zero_check(std::uint32_t p, int m, i64 step);

template <class Pred>
FiniteGroup subgroup_of(const FiniteGroup& g, Pred pred, std::vector<U3Elt> gens)
{
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (pred(g.elts[i])) members.push_back(i);
    return subgroup_by_indices(g, members, gens);
}

}  // namespace hk
