// Chevalley-Eilenberg cohomology of n = strictly lower triangular matrices
// with coefficients in a simple module, split by torus weight.
#pragma once

#include "hk/exactla.hpp"
#include "hk/repmod.hpp"
#include "hk/rootdata.hpp"

#include <map>
#include <vector>

namespace hk {

struct NilpotentLie {
    int n = 0;
    std::vector<RootPair> basis;  // e_ij, i > j, row-major
    std::vector<Weight> weights;

    explicit NilpotentLie(int n);
    std::size_t dim() const { return basis.size(); }
    int index_of(int i, int j) const;
    // [e_a, e_b] = coeff * e_target, or coeff = 0.
    std::pair<int, int> bracket(std::size_t a, std::size_t b) const;
};

// e_alpha = first divided power of x_alpha, one matrix per basis element of n.
std::vector<Matrix> lie_action_from_group(const GroupRep& v, const NilpotentLie& lie);

struct CEComplex {
    ChainComplex complex;
    std::vector<std::vector<unsigned>> subsets;  // per degree, colex order
    std::vector<std::vector<Weight>> weights;    // per degree, per basis cochain
};

CEComplex build_ce_complex(const GroupRep& v);

struct LieCohomology {
    std::vector<std::size_t> cochain_dims;
    std::vector<std::size_t> total;                          // h^i
    std::map<std::pair<int, Weight>, std::size_t> observed;  // nonzero (degree, weight) -> dim
    std::map<std::pair<int, Weight>, std::size_t> predicted;
    bool in_bottom_alcove = false;  // bottom alcove
    bool matches = false;
};

LieCohomology ce_cohomology(const GroupRep& v);

// Weights w.(w0 mu) with l(w) = i.
std::map<std::pair<int, Weight>, std::size_t> kostant_prediction(int n, const Weight& mu);

struct CoinvariantLine {
    Weight weight;
    Matrix projection;  // 1 x dim
};

// Coinvariants of the product of root groups over w(Phi+).
CoinvariantLine coinvariant_line(const GroupRep& v, std::size_t w);

struct WitnessCheck {
    int degree = 0;
    Weight weight;
    bool closed = false;
    bool nonzero_class = false;
};

// f_{alpha_1} ^ ... ^ f_{alpha_i} (x) v_{w(w0 mu)} over Phi- cap w Phi+.
WitnessCheck witness_cocycle(const GroupRep& v, const CEComplex& ce, std::size_t w);

}  // namespace hk
