// Simple modules V(mu) of SL_n over F_p with p-restricted highest weight,
// root subgroup actions, and the projectors xi_lambda.
//
// Roots of SL_n are indexed by ordered pairs (i, j), i != j, standing for
// eps_i - eps_j; the root element x_ij(t) = 1 + t e_ij.  Pairs with i < j are
// positive, pairs with i > j span the lower unipotent group N.
#pragma once

#include "hk/exactla.hpp"
#include "hk/rootdata.hpp"
#include "hk/unipotent.hpp"

#include <vector>

namespace hk {

struct RootPair {
    int i, j;
};

Weight root_weight(int n, int i, int j);  // eps_i - eps_j in omega coordinates

struct GroupRep {
    int n = 0;
    std::uint32_t p = 0;
    Weight mu;
    std::size_t dim = 0;
    std::vector<Weight> weights;  // weight of each basis vector
    // divided[i*n+j][s-1] is e_ij^(s); x[i*n+j] is x_ij(1).
    std::vector<std::vector<Matrix>> divided;
    std::vector<Matrix> x;

    const Matrix& x_root(int i, int j) const { return x.at(i * n + j); }
    // Zero matrix when s exceeds the stored range.
    Matrix e_root(int i, int j, int s = 1) const;
    // Image of a lower unitriangular matrix over F_p.
    Matrix act_lower(const UnipotentElt& g) const;
};

struct IrreducibilityCertificate {
    std::size_t invariants_dim = 0;    // dim V^{N+}
    std::size_t coinvariants_dim = 0;  // dim V_{N-}
    std::size_t composite_rank = 0;
    bool passed = false;
};

// Builds V(mu) as the highest-weight submodule of the tensor space modulo
// the radical of its contravariant form.  Throws StructuralError if the
// certificate fails.
GroupRep build_simple_module(int n, std::uint32_t p, const Weight& mu);
GroupRep trivial_module(int n, std::uint32_t p);
GroupRep direct_sum(const GroupRep& a, const GroupRep& b);

IrreducibilityCertificate irreducibility_check(const GroupRep& v);

// Columns span the common fixed space of the given root subgroups.
Matrix subgroup_invariants(const GroupRep& v, const std::vector<RootPair>& roots);
// Rows span the annihilator of sum_alpha im(x_alpha(1) - 1).
Matrix coinvariant_projection(const GroupRep& v, const std::vector<RootPair>& roots);

// Roots of N_lambda (positive on lambda_{k+1}) and N_{-lambda}.
std::vector<RootPair> radical_roots(int n, int k);
std::vector<RootPair> opposite_radical_roots(int n, int k);

struct XiMap {
    int k = 0;  // lambda_{k+1}
    Matrix matrix;
    std::size_t rank = 0;
};

XiMap xi_map(const GroupRep& v, int k);

// Root strings: for each weight and simple root, the length s of any
// string lambda - s alpha inside the weights satisfies s < p.
bool root_string_bound(const GroupRep& v);

}  // namespace hk
