// Root systems of types A, B, C, D, G with their Weyl groups.
//
// Roots are stored in simple-root coordinates, coroots in simple-coroot
// coordinates.  Weights live in the fundamental weight basis, coweights in
// the basis of fundamental coweights of the adjoint lattice, so that
// <alpha_i, lambda_j> = delta_ij and <omega_i, alpha_j^v> = delta_ij.
#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

using IntVec = std::vector<int>;
using IntMat = std::vector<IntVec>;

struct Weight {
    IntVec c;
    auto operator<=>(const Weight&) const = default;
};

struct Coweight {
    IntVec c;
    auto operator<=>(const Coweight&) const = default;
};

class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeylElement {
    IntMat on_weights;    // matrix acting on omega-coordinates (columns = images)
    IntMat on_coweights;  // matrix acting on nabla-coordinates
    IntVec word;          // reduced word in simple reflections, leftmost first
    int length = 0;
};

class RootSystem {
public:
    RootSystem(char series, int rank);

    char series() const { return series_; }
    int rank() const { return rank_; }
    std::string label() const;

    // A[i][j] = <alpha_i^v, alpha_j>
    const IntMat& cartan() const { return cartan_; }
    const std::vector<IntVec>& positive_roots() const { return pos_roots_; }
    const std::vector<IntVec>& positive_coroots() const { return pos_coroots_; }
    std::size_t num_positive() const { return pos_roots_.size(); }

    const std::vector<WeylElement>& weyl() const { return weyl_; }
    std::size_t weyl_order() const { return weyl_.size(); }
    std::size_t identity_index() const { return 0; }
    std::size_t longest_index() const { return longest_; }
    std::size_t multiply(std::size_t v, std::size_t w) const;  // index of v*w
    std::size_t inverse(std::size_t w) const { return inverse_[w]; }

    // 2 rho in the omega basis (all entries 2).
    Weight two_rho() const;
    Weight rho() const;
    // Highest short root, in simple-root coordinates, and its coroot.
    const IntVec& highest_short_root() const { return pos_roots_[highest_short_]; }
    const IntVec& highest_coroot() const { return pos_coroots_[highest_short_]; }
    int coxeter_number() const;

    Weight root_as_weight(const IntVec& root) const;
    Coweight coroot_as_coweight(const IntVec& coroot) const;
    int pair(const Weight& mu, const IntVec& coroot) const;      // <mu, coroot>
    int pair_root(const IntVec& root, const Coweight& x) const;  // <root, x>

    Weight act(std::size_t w, const Weight& mu) const;
    Coweight act(std::size_t w, const Coweight& x) const;
    Weight dot_action(std::size_t w, const Weight& eta) const;

    // True iff lambda - mu is a non-negative combination of simple coroots.
    bool dominance_leq(const Coweight& mu, const Coweight& lambda) const;
    bool is_dominant(const Coweight& x) const;
    bool is_dominant(const Weight& mu) const;
    bool is_restricted(const Weight& mu, int p) const;
    bool bottom_alcove_check(const Weight& mu, int p) const;

    // Type A only: permutation of {0..n-1} induced on epsilon_k.
    std::vector<int> permutation(std::size_t w) const;

private:
    char series_;
    int rank_;
    IntMat cartan_;
    std::vector<IntVec> pos_roots_, pos_coroots_;
    std::size_t highest_short_ = 0;
    std::vector<WeylElement> weyl_;
    std::vector<std::size_t> inverse_;
    std::size_t longest_ = 0;
    std::map<IntMat, std::size_t> index_of_;
};

IntMat cartan_matrix(char series, int rank);
int inversion_count(const std::vector<int>& perm);

}  // namespace hk
