// Lower unitriangular integer matrices mod p^M and the coset spaces N/N[E].
//
// A subset E of the fundamental coweights of PGL_n is a bitmask: bit k stands
// for lambda_{k+1}, lifted to diag(p,..,p,1,..,1) with k+1 entries p.
#pragma once

#include "hk/exactla.hpp"
#include "hk/rootdata.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hk {

using Subset = std::uint32_t;

inline bool contains(Subset e, int k) { return (e >> k) & 1u; }
inline int subset_size(Subset e) { return __builtin_popcount(e); }

i64 int_pow(i64 base, int e);

class UnipotentElt {
public:
    UnipotentElt() = default;
    UnipotentElt(int n, i64 modulus);  // identity
    static UnipotentElt elementary(int n, i64 modulus, int i, int j, i64 t);

    int n() const { return n_; }
    i64 modulus() const { return modulus_; }
    i64 at(int i, int j) const { return a_[i * n_ + j]; }
    void set(int i, int j, i64 v);

    UnipotentElt operator*(const UnipotentElt& o) const;
    UnipotentElt inverse() const;
    UnipotentElt reduced(i64 new_modulus) const;
    bool is_identity() const;
    bool operator==(const UnipotentElt& o) const = default;

    // Below-diagonal entries in row-major order (2,1),(3,1),(3,2),...
    std::vector<i64> lower_entries() const;

private:
    int n_ = 0;
    i64 modulus_ = 1;
    std::vector<i64> a_;
};

// Below-diagonal positions (i, j), i > j, 0-based, in row-major order.
std::vector<std::pair<int, int>> lower_positions(int n);

// m[i][j] for i > j; zero on and above the diagonal.
IntMat exponent_matrix(Subset e, int n);
int exponent_sum(Subset e, int n);
// Precision needed to read gamma_E i^-1 gamma_E^-1 mod p for every E.
int required_precision(int n);

UnipotentElt canonical_coset_rep(const UnipotentElt& u, const IntMat& m, i64 p);

class CosetTable {
public:
    CosetTable(int n, i64 p, Subset e, int precision);

    int n() const { return n_; }
    i64 p() const { return p_; }
    Subset subset() const { return e_; }
    int precision() const { return precision_; }
    const IntMat& exponents() const { return m_; }
    std::size_t size() const { return reps_.size(); }
    const UnipotentElt& rep(std::size_t k) const { return reps_[k]; }

    UnipotentElt canonical(const UnipotentElt& u) const;
    // Position of a canonical representative; throws if u is not canonical.
    std::size_t index_of(const UnipotentElt& u) const;
    bool is_member(const UnipotentElt& u) const;  // u in N[E]

    struct Action {
        std::size_t target;        // index of canonical rep of u * rep
        UnipotentElt stabilizer;   // i2 = rep'^-1 u rep, an element of N[E]
        UnipotentElt conjugate;    // gamma_E i2^-1 gamma_E^-1 mod p
    };
    Action act(const UnipotentElt& u, std::size_t rep_index) const;
    // gamma_E x gamma_E^-1 mod p for x in N[E].
    UnipotentElt conjugate_mod_p(const UnipotentElt& x) const;

private:
    int n_;
    i64 p_;
    Subset e_;
    int precision_;
    i64 modulus_;
    IntMat m_;
    std::vector<std::pair<int, int>> positions_;
    std::vector<i64> radix_;
    std::vector<UnipotentElt> reps_;
};

}  // namespace hk
