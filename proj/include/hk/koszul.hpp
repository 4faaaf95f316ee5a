// The complexes K_D(V) = (+)_{E in D} ind_{N[E]}^N V with differentials
// built from the signed maps sigma(lambda,E) xi_lambda.
#pragma once

#include "hk/exactla.hpp"
#include "hk/repmod.hpp"
#include "hk/unipotent.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hk {

struct Coefficients {
    std::uint32_t field = 0;  // 0 = Q
    std::size_t dim = 1;
    std::optional<GroupRep> rep;
    std::vector<Matrix> xi;  // xi[k] for lambda_{k+1}

    static Coefficients trivial(int n, std::uint32_t field);
    static Coefficients from_rep(const GroupRep& v);
    // Image of a lower unitriangular matrix mod p.
    Matrix act(const UnipotentElt& g) const;
};

struct KoszulSpec {
    int n = 2;
    i64 p = 2;
    Subset d = 0;
    std::vector<int> order;  // enumeration of nabla: order[s] is the index of the s-th coweight
    Coefficients coeff;

    static KoszulSpec standard(int n, i64 p, Coefficients c);  // D = nabla, Bourbaki order
    int nabla_size() const { return n - 1; }
};

// sigma(lambda_{k+1}, E) with respect to the enumeration.
int koszul_sign(const std::vector<int>& order, Subset e, int k);

struct KoszulComplex {
    ChainComplex complex;
    std::vector<std::vector<Subset>> subsets;          // per degree, increasing bitmask
    std::vector<std::map<Subset, std::size_t>> offset;  // start of each summand
    std::map<Subset, CosetTable> tables;
};

class KoszulBuilder {
public:
    explicit KoszulBuilder(const KoszulSpec& spec);

    const KoszulSpec& spec() const { return spec_; }
    const CosetTable& table(Subset e);
    // Matrix of T_lambda : ind_{N[E]} V -> ind_{N[E u lambda]} V, sign included.
    Matrix assemble_T_lambda(Subset e, int k);
    KoszulComplex build();
    // Action of h in N (mod p^M) on ind_{N[E]} V.
    Matrix induced_action(Subset e, const UnipotentElt& h);

private:
    const Matrix& rho(const UnipotentElt& g);

    KoszulSpec spec_;
    int precision_;
    std::map<Subset, CosetTable> tables_;
    std::map<std::vector<i64>, Matrix> rho_cache_;
};

struct ExactnessVerdict {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> homology;
    std::vector<std::size_t> failing_degrees;  // j < |D| with h^j != 0
    bool exact = false;
};

ExactnessVerdict exactness_verdict(const KoszulComplex& k, int d_size);
ExactnessVerdict check_exactness(const KoszulSpec& spec);

struct InheritanceReport {
    std::map<Subset, ExactnessVerdict> verdicts;  // every D in nabla
    bool full_exact = false;
    bool consistent = true;  // full exact implies every K_D exact
};

InheritanceReport exactness_inheritance_check(const KoszulSpec& spec);

// Closed-form dimension of K^j.
std::size_t expected_dimension(int n, i64 p, Subset d, int j, std::size_t module_dim);

}  // namespace hk
