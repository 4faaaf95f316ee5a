#include "hk/satake.hpp"

#include <sstream>
#include <stdexcept>

namespace hk {

QPoly qpoly_mul(const QPoly& a, const QPoly& b)
{
    QPoly r;
    for (auto [ea, ca] : a)
        for (auto [eb, cb] : b) {
            long& v = r[ea + eb];
            v += ca * cb;
            if (v == 0) r.erase(ea + eb);
        }
    return r;
}

QPoly qpoly_add(const QPoly& a, const QPoly& b, long s)
{
    QPoly r = a;
    for (auto [e, c] : b) {
        long& v = r[e];
        v += s * c;
        if (v == 0) r.erase(e);
    }
    return r;
}

std::string qpoly_str(const QPoly& a)
{
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        auto [e, c] = *it;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        long m = c < 0 ? -c : c;
        if (e == 0) {
            os << m;
            continue;
        }
        if (m != 1) os << m << "*";
        os << "q";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

LaurentElt LaurentElt::monomial(const Coweight& x, QPoly c)
{
    LaurentElt f;
    f.add_term(x, c);
    return f;
}

QPoly LaurentElt::coeff(const Coweight& x) const
{
    auto it = terms_.find(x);
    return it == terms_.end() ? QPoly{} : it->second;
}

void LaurentElt::add_term(const Coweight& x, const QPoly& c)
{
    QPoly v = qpoly_add(coeff(x), c);
    if (v.empty())
        terms_.erase(x);
    else
        terms_[x] = v;
}

LaurentElt operator+(const LaurentElt& a, const LaurentElt& b)
{
    LaurentElt r = a;
    for (const auto& [x, c] : b.terms_) r.add_term(x, c);
    return r;
}

LaurentElt operator-(const LaurentElt& a, const LaurentElt& b)
{
    LaurentElt r = a;
    for (const auto& [x, c] : b.terms_) r.add_term(x, qpoly_add({}, c, -1));
    return r;
}

LaurentElt operator*(const LaurentElt& a, const LaurentElt& b)
{
    LaurentElt r;
    for (const auto& [x, cx] : a.terms_)
        for (const auto& [y, cy] : b.terms_) {
            Coweight s = x;
            for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] += y.c[i];
            r.add_term(s, qpoly_mul(cx, cy));
        }
    return r;
}

LaurentElt LaurentElt::scaled(const QPoly& c) const
{
    LaurentElt r;
    for (const auto& [x, cx] : terms_) r.add_term(x, qpoly_mul(cx, c));
    return r;
}

SatakeAlgebra::SatakeAlgebra(const RootSystem& rs, int gamma_sign) : rs_(rs), sign_(gamma_sign)
{
    if (gamma_sign != 1 && gamma_sign != -1) throw std::invalid_argument("gamma sign must be +1 or -1");
}

int SatakeAlgebra::gamma_exponent(std::size_t w, const Coweight& lambda) const
{
    // <2 rho, x> = sum over positive roots of <alpha, x>
    Coweight wl = rs_.act(w, lambda);
    Coweight diff = lambda;
    for (std::size_t i = 0; i < diff.c.size(); ++i) diff.c[i] -= wl.c[i];
    int two = 0;
    for (const auto& root : rs_.positive_roots()) two += rs_.pair_root(root, diff);
    if (two % 2) throw StructuralError("gamma: <2 rho, lambda - w lambda> is odd");
    return sign_ * two / 2;
}

QPoly SatakeAlgebra::gamma(std::size_t w, const Coweight& lambda) const { return {{gamma_exponent(w, lambda), 1}}; }

LaurentElt SatakeAlgebra::twisted_action(std::size_t w, const LaurentElt& f) const
{
    LaurentElt r;
    for (const auto& [x, c] : f.terms()) r.add_term(rs_.act(w, x), qpoly_mul(gamma(w, x), c));
    return r;
}

LaurentElt SatakeAlgebra::sigma(const Coweight& mu) const
{
    if (!rs_.is_dominant(mu)) throw std::invalid_argument("sigma: weight is not dominant");
    std::map<Coweight, int> orbit;
    for (std::size_t w = 0; w < rs_.weyl_order(); ++w) {
        Coweight x = rs_.act(w, mu);
        int e = gamma_exponent(w, mu);
        auto [it, fresh] = orbit.emplace(x, e);
        if (!fresh && it->second != e) throw StructuralError("sigma: gamma differs on a coset of the stabilizer");
        if (e < 0) throw StructuralError("sigma: gamma(w, mu) is not integral for dominant mu");
    }
    LaurentElt s;
    for (const auto& [x, e] : orbit) s.add_term(x, {{e, 1}});
    return s;
}

SigmaExpansion expand_in_sigma(const SatakeAlgebra& s, LaurentElt f, std::size_t max_steps)
{
    const RootSystem& rs = s.roots();
    SigmaExpansion ex;
    while (!f.is_zero() && ex.steps < max_steps) {
        ++ex.steps;
        std::vector<Coweight> dom;
        for (const auto& [x, c] : f.terms())
            if (rs.is_dominant(x)) dom.push_back(x);
        if (dom.empty()) return ex;
        // a dominance-maximal dominant support element
        Coweight lead = dom.front();
        for (const auto& x : dom)
            if (x != lead && rs.dominance_leq(lead, x)) lead = x;
        QPoly c = f.coeff(lead);
        ex.coeffs[lead] = qpoly_add(ex.coeffs[lead], c);
        f = f - s.sigma(lead).scaled(c);
    }
    ex.terminated = f.is_zero();
    return ex;
}

TriangularReport triangular_product_check(const SatakeAlgebra& s, const Coweight& mu, const Coweight& mu2)
{
    TriangularReport rep{mu, mu2, {}, false, false};
    rep.expansion = expand_in_sigma(s, s.sigma(mu) * s.sigma(mu2));
    Coweight top = mu;
    for (std::size_t i = 0; i < top.c.size(); ++i) top.c[i] += mu2.c[i];
    auto it = rep.expansion.coeffs.find(top);
    rep.leading_is_one = it != rep.expansion.coeffs.end() && it->second == QPoly{{0, 1}};
    rep.lower_terms_strict = true;
    for (const auto& [x, c] : rep.expansion.coeffs)
        if (x != top && !s.roots().dominance_leq(x, top)) rep.lower_terms_strict = false;
    return rep;
}

CocycleReport gamma_cocycle_check(const SatakeAlgebra& s, int radius)
{
    const RootSystem& rs = s.roots();
    const int r = rs.rank();
    std::vector<Coweight> box;
    IntVec c(r, -radius);
    while (true) {
        box.push_back(Coweight{c});
        int k = 0;
        while (k < r && ++c[k] > radius) c[k++] = -radius;
        if (k == r) break;
    }
    CocycleReport rep;
    for (std::size_t w = 0; w < rs.weyl_order(); ++w)
        for (const auto& l : box) {
            const int gl = s.gamma_exponent(w, l);
            for (const auto& m : box) {
                Coweight lm = l;
                for (int i = 0; i < r; ++i) lm.c[i] += m.c[i];
                ++rep.multiplicative_checks;
                if (s.gamma_exponent(w, lm) != gl + s.gamma_exponent(w, m)) ++rep.failures;
            }
            for (std::size_t v = 0; v < rs.weyl_order(); ++v) {
                ++rep.composition_checks;
                if (s.gamma_exponent(rs.multiply(v, w), l) != s.gamma_exponent(v, rs.act(w, l)) + gl) ++rep.failures;
            }
        }
    return rep;
}

std::vector<Coweight> dominant_box(const RootSystem& rs, int max_coord)
{
    std::vector<Coweight> out;
    const int r = rs.rank();
    IntVec c(r, 0);
    while (true) {
        out.push_back(Coweight{c});
        int k = 0;
        while (k < r && ++c[k] > max_coord) c[k++] = 0;
        if (k == r) break;
    }
    return out;
}

}  // namespace hk
