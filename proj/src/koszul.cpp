#include "hk/koszul.hpp"

#include <algorithm>
#include <stdexcept>

namespace hk {

Coefficients Coefficients::trivial(int n, std::uint32_t field)
{
    Coefficients c;
    c.field = field;
    c.dim = 1;
    c.xi.assign(n - 1, Matrix::identity(field, 1));
    return c;
}

Coefficients Coefficients::from_rep(const GroupRep& v)
{
    Coefficients c;
    c.field = v.p;
    c.dim = v.dim;
    c.rep = v;
    for (int k = 0; k < v.n - 1; ++k) {
        XiMap xi = xi_map(v, k);
        if (!(xi.matrix * xi.matrix == xi.matrix)) throw StructuralError("xi_lambda is not idempotent");
        c.xi.push_back(xi.matrix);
    }
    return c;
}

Matrix Coefficients::act(const UnipotentElt& g) const
{
    if (!rep) return Matrix::identity(field, 1);
    return rep->act_lower(g);
}

KoszulSpec KoszulSpec::standard(int n, i64 p, Coefficients c)
{
    KoszulSpec s;
    s.n = n;
    s.p = p;
    s.d = (Subset{1} << (n - 1)) - 1;
    for (int k = 0; k < n - 1; ++k) s.order.push_back(k);
    s.coeff = std::move(c);
    return s;
}

int koszul_sign(const std::vector<int>& order, Subset e, int k)
{
    int s = 0;
    for (int idx : order) {
        if (contains(e, idx)) continue;
        ++s;
        if (idx == k) return (s % 2) ? -1 : 1;
    }
    throw std::invalid_argument("koszul_sign: lambda lies in E");
}

KoszulBuilder::KoszulBuilder(const KoszulSpec& spec) : spec_(spec), precision_(required_precision(spec.n))
{
    const int r = spec.n - 1;
    if (spec.n < 2 || spec.n > 5) throw std::invalid_argument("Koszul complex: need 2 <= n <= 5");
    if (spec.d >> r) throw std::invalid_argument("Koszul complex: D is not a subset of nabla");
    std::vector<int> sorted = spec.order;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < r; ++k)
        if (static_cast<int>(sorted.size()) != r || sorted[k] != k)
            throw std::invalid_argument("Koszul complex: enumeration is not a permutation of nabla");
    if (spec.coeff.rep) {
        if (spec.coeff.rep->n != spec.n || static_cast<i64>(spec.coeff.rep->p) != spec.p)
            throw std::invalid_argument("Koszul complex: module does not match the group");
    } else if (spec.coeff.field != 0 && static_cast<i64>(spec.coeff.field) != spec.p) {
        throw std::invalid_argument("Koszul complex: coefficient field must be Q or F_p");
    }
    if (static_cast<int>(spec.coeff.xi.size()) != r) throw std::invalid_argument("Koszul complex: missing xi maps");
}

const CosetTable& KoszulBuilder::table(Subset e)
{
    auto it = tables_.find(e);
    if (it == tables_.end()) it = tables_.emplace(e, CosetTable(spec_.n, spec_.p, e, precision_)).first;
    return it->second;
}

const Matrix& KoszulBuilder::rho(const UnipotentElt& g)
{
    auto key = g.lower_entries();
    auto it = rho_cache_.find(key);
    if (it == rho_cache_.end()) it = rho_cache_.emplace(key, spec_.coeff.act(g)).first;
    return it->second;
}

Matrix KoszulBuilder::assemble_T_lambda(Subset e, int k)
{
    if (contains(e, k)) throw std::invalid_argument("assemble_T_lambda: lambda already in E");
    const Subset f = e | (Subset{1} << k);
    const CosetTable& src = table(e);
    const CosetTable& dst = table(f);
    const std::size_t dim = spec_.coeff.dim;
    const int sign = koszul_sign(spec_.order, e, k);
    Matrix t(spec_.coeff.field, dst.size() * dim, src.size() * dim);
    for (std::size_t r = 0; r < dst.size(); ++r) {
        const UnipotentElt& u2 = dst.rep(r);
        UnipotentElt u = src.canonical(u2);
        UnipotentElt i2 = u.inverse() * u2;
        Matrix block = spec_.coeff.xi[k] * rho(src.conjugate_mod_p(i2.inverse()));
        t.add_block(r * dim, src.index_of(u) * dim, block, sign);
    }
    return t;
}

KoszulComplex KoszulBuilder::build()
{
    KoszulComplex kc;
    const int dsize = subset_size(spec_.d);
    const std::size_t dim = spec_.coeff.dim;
    kc.subsets.resize(dsize + 1);
    kc.offset.resize(dsize + 1);
    for (Subset e = 0; e <= spec_.d; ++e)
        if ((e & spec_.d) == e) kc.subsets[subset_size(e)].push_back(e);
    kc.complex.p = spec_.coeff.field;
    for (int j = 0; j <= dsize; ++j) {
        std::size_t total = 0;
        for (Subset e : kc.subsets[j]) {
            kc.offset[j][e] = total;
            total += table(e).size() * dim;
        }
        kc.complex.dims.push_back(total);
    }
    for (int j = 0; j < dsize; ++j) {
        Matrix d(spec_.coeff.field, kc.complex.dims[j + 1], kc.complex.dims[j]);
        for (Subset e : kc.subsets[j])
            for (int k = 0; k < spec_.n - 1; ++k) {
                if (!contains(spec_.d, k) || contains(e, k)) continue;
                Subset f = e | (Subset{1} << k);
                d.add_block(kc.offset[j + 1].at(f), kc.offset[j].at(e), assemble_T_lambda(e, k));
            }
        kc.complex.d.push_back(std::move(d));
    }
    kc.complex.verify();
    for (int j = 0; j <= dsize; ++j)
        for (Subset e : kc.subsets[j]) kc.tables.emplace(e, table(e));
    return kc;
}

Matrix KoszulBuilder::induced_action(Subset e, const UnipotentElt& h)
{
    const CosetTable& t = table(e);
    const std::size_t dim = spec_.coeff.dim;
    UnipotentElt hinv = h.inverse();
    Matrix a(spec_.coeff.field, t.size() * dim, t.size() * dim);
    for (std::size_t r = 0; r < t.size(); ++r) {
        // (h f)(u) = f(h^-1 u) = rho(gamma i2^-1 gamma^-1) f(u0) with h^-1 u = u0 i2
        auto act = t.act(hinv, r);
        a.add_block(r * dim, act.target * dim, rho(act.conjugate));
    }
    return a;
}

ExactnessVerdict exactness_verdict(const KoszulComplex& k, int d_size)
{
    ExactnessVerdict v;
    v.dims = k.complex.dims;
    v.homology = homology_dims(k.complex);
    for (int j = 0; j < d_size; ++j)
        if (v.homology[j] != 0) v.failing_degrees.push_back(j);
    v.exact = v.failing_degrees.empty();
    return v;
}

ExactnessVerdict check_exactness(const KoszulSpec& spec)
{
    KoszulBuilder b(spec);
    return exactness_verdict(b.build(), subset_size(spec.d));
}

InheritanceReport exactness_inheritance_check(const KoszulSpec& spec)
{
    InheritanceReport rep;
    const Subset full = (Subset{1} << (spec.n - 1)) - 1;
    for (Subset d = 0; d <= full; ++d) {
        KoszulSpec s = spec;
        s.d = d;
        rep.verdicts[d] = check_exactness(s);
    }
    rep.full_exact = rep.verdicts.at(full).exact;
    if (rep.full_exact)
        for (auto& [d, v] : rep.verdicts) rep.consistent &= v.exact;
    return rep;
}

std::size_t expected_dimension(int n, i64 p, Subset d, int j, std::size_t module_dim)
{
    std::size_t total = 0;
    for (Subset e = 0; e <= d; ++e)
        if ((e & d) == e && subset_size(e) == j)
            total += static_cast<std::size_t>(int_pow(p, exponent_sum(e, n))) * module_dim;
    return total;
}

}  // namespace hk
