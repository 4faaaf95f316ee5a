// The coweight group algebra Z[q, 1/q][X_*] with the twisted W-action, the
// sigma_mu basis of its invariants and the triangular product check.
#pragma once

#include "hk/rootdata.hpp"

#include <map>
#include <string>
#include <vector>

namespace hk {

// Integer Laurent polynomial in q: exponent -> coefficient, no zeros stored.
using QPoly = std::map<int, long>;

QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_add(const QPoly& a, const QPoly& b, long s = 1);
std::string qpoly_str(const QPoly& a);

class LaurentElt {
public:
    LaurentElt() = default;
    static LaurentElt monomial(const Coweight& x, QPoly c = {{0, 1}});

    const std::map<Coweight, QPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    QPoly coeff(const Coweight& x) const;
    void add_term(const Coweight& x, const QPoly& c);

    friend LaurentElt operator+(const LaurentElt& a, const LaurentElt& b);
    friend LaurentElt operator-(const LaurentElt& a, const LaurentElt& b);
    friend LaurentElt operator*(const LaurentElt& a, const LaurentElt& b);
    LaurentElt scaled(const QPoly& c) const;
    bool operator==(const LaurentElt&) const = default;

private:
    std::map<Coweight, QPoly> terms_;
};

// Exponent sign in gamma(w, lambda) = q^{sign <rho, lambda - w lambda>}.
inline constexpr int kGammaSign = 1;

class SatakeAlgebra {
public:
    explicit SatakeAlgebra(const RootSystem& rs, int gamma_sign = kGammaSign);

    const RootSystem& roots() const { return rs_; }
    int gamma_sign() const { return sign_; }

    // Exponent of q in gamma(w, lambda).
    int gamma_exponent(std::size_t w, const Coweight& lambda) const;
    QPoly gamma(std::size_t w, const Coweight& lambda) const;
    LaurentElt twisted_action(std::size_t w, const LaurentElt& f) const;
    // Throws std::invalid_argument unless mu is dominant.
    LaurentElt sigma(const Coweight& mu) const;

private:
    const RootSystem& rs_;
    int sign_;
};

struct SigmaExpansion {
    std::map<Coweight, QPoly> coeffs;  // mu'' -> c(mu'')
    bool terminated = false;
    std::size_t steps = 0;
};

// Greedy leading-term subtraction along dominance.
SigmaExpansion expand_in_sigma(const SatakeAlgebra& s, LaurentElt f, std::size_t max_steps = 10'000);

struct TriangularReport {
    Coweight mu, mu2;
    SigmaExpansion expansion;
    bool leading_is_one = false;
    bool lower_terms_strict = false;
    bool passed() const { return expansion.terminated && leading_is_one && lower_terms_strict; }
};

TriangularReport triangular_product_check(const SatakeAlgebra& s, const Coweight& mu, const Coweight& mu2);

struct CocycleReport {
    std::size_t multiplicative_checks = 0, composition_checks = 0, failures = 0;
};
// Both identities for every lambda with coordinates in [-radius, radius].
CocycleReport gamma_cocycle_check(const SatakeAlgebra& s, int radius);

std::vector<Coweight> dominant_box(const RootSystem& rs, int max_coord);

}  // namespace hk
