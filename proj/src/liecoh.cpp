#include "hk/liecoh.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hk {

NilpotentLie::NilpotentLie(int n_) : n(n_)
{
    for (auto [i, j] : lower_positions(n)) {
        basis.push_back({i, j});
        weights.push_back(root_weight(n, i, j));
    }
}

int NilpotentLie::index_of(int i, int j) const
{
    for (std::size_t a = 0; a < basis.size(); ++a)
        if (basis[a].i == i && basis[a].j == j) return static_cast<int>(a);
    return -1;
}

std::pair<int, int> NilpotentLie::bracket(std::size_t a, std::size_t b) const
{
    // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
    auto [i, j] = basis[a];
    auto [k, l] = basis[b];
    if (j == k) return {index_of(i, l), 1};
    if (l == i) return {index_of(k, j), -1};
    return {-1, 0};
}

std::vector<Matrix> lie_action_from_group(const GroupRep& v, const NilpotentLie& lie)
{
    if (v.divided.size() != static_cast<std::size_t>(v.n * v.n))
        throw std::invalid_argument("lie_action_from_group: module carries no divided-power data");
    std::vector<Matrix> out;
    for (auto [i, j] : lie.basis) out.push_back(v.e_root(i, j, 1));
    return out;
}

namespace {

std::vector<std::vector<unsigned>> colex_subsets(std::size_t n)
{
    std::vector<std::vector<unsigned>> by_size(n + 1);
    for (unsigned m = 0; m < (1u << n); ++m) by_size[__builtin_popcount(m)].push_back(m);
    return by_size;
}

std::vector<int> elements(unsigned m)
{
    std::vector<int> out;
    for (int b = 0; m >> b; ++b)
        if ((m >> b) & 1) out.push_back(b);
    return out;
}

}  // namespace

CEComplex build_ce_complex(const GroupRep& v)
{
    NilpotentLie lie(v.n);
    auto e = lie_action_from_group(v, lie);
    const std::size_t N = lie.dim(), dim = v.dim;
    const std::uint32_t p = v.p;

    CEComplex ce;
    ce.subsets = colex_subsets(N);
    std::vector<std::map<unsigned, std::size_t>> pos(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        for (std::size_t s = 0; s < ce.subsets[k].size(); ++s) pos[k][ce.subsets[k][s]] = s;
        ce.complex.dims.push_back(ce.subsets[k].size() * dim);
        std::vector<Weight> wts;
        for (unsigned m : ce.subsets[k])
            for (std::size_t b = 0; b < dim; ++b) {
                Weight w = v.weights[b];
                for (int a : elements(m))
                    for (int t = 0; t < v.n - 1; ++t) w.c[t] -= lie.weights[a].c[t];
                wts.push_back(w);
            }
        ce.weights.push_back(std::move(wts));
    }
    ce.complex.p = p;
    Matrix id = Matrix::identity(p, dim);
    for (std::size_t k = 0; k < N; ++k) {
        Matrix d(p, ce.complex.dims[k + 1], ce.complex.dims[k]);
        for (std::size_t row = 0; row < ce.subsets[k + 1].size(); ++row) {
            const unsigned tm = ce.subsets[k + 1][row];
            const auto t = elements(tm);
            for (std::size_t i = 0; i <= k; ++i) {
                const std::size_t col = pos[k].at(tm & ~(1u << t[i]));
                d.add_block(row * dim, col * dim, e[t[i]], (i % 2) ? -1 : 1);
            }
            for (std::size_t i = 0; i <= k; ++i)
                for (std::size_t j = i + 1; j <= k; ++j) {
                    auto [target, coeff] = lie.bracket(t[i], t[j]);
                    if (coeff == 0) continue;
                    const unsigned rest = tm & ~(1u << t[i]) & ~(1u << t[j]);
                    if ((rest >> target) & 1) continue;
                    // move e_target to the front of the sorted argument list
                    const int before = __builtin_popcount(rest & ((1u << target) - 1));
                    const int sign = ((i + j) % 2 ? -1 : 1) * coeff * (before % 2 ? -1 : 1);
                    const std::size_t col = pos[k].at(rest | (1u << target));
                    d.add_block(row * dim, col * dim, id, sign);
                }
        }
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (d.at(r, c) && ce.weights[k + 1][r] != ce.weights[k][c])
                    throw StructuralError("CE differential mixes torus weights");
        ce.complex.d.push_back(std::move(d));
    }
    ce.complex.verify();
    return ce;
}

std::map<std::pair<int, Weight>, std::size_t> kostant_prediction(int n, const Weight& mu)
{
    RootSystem rs('A', n - 1);
    Weight low = rs.act(rs.longest_index(), mu);
    std::map<std::pair<int, Weight>, std::size_t> out;
    for (std::size_t w = 0; w < rs.weyl_order(); ++w) ++out[{rs.weyl()[w].length, rs.dot_action(w, low)}];
    return out;
}

LieCohomology ce_cohomology(const GroupRep& v)
{
    CEComplex ce = build_ce_complex(v);
    const auto& c = ce.complex;
    LieCohomology res;
    res.cochain_dims = c.dims;
    res.total.assign(c.dims.size(), 0);
    RootSystem rs('A', v.n - 1);
    res.in_bottom_alcove = rs.bottom_alcove_check(v.mu, static_cast<int>(v.p));

    std::set<Weight> all;
    for (const auto& ws : ce.weights) all.insert(ws.begin(), ws.end());
    for (const Weight& nu : all) {
        std::vector<std::vector<std::size_t>> idx(c.dims.size());
        for (std::size_t k = 0; k < c.dims.size(); ++k)
            for (std::size_t a = 0; a < c.dims[k]; ++a)
                if (ce.weights[k][a] == nu) idx[k].push_back(a);
        std::vector<std::size_t> ranks(c.d.size(), 0);
        for (std::size_t k = 0; k < c.d.size(); ++k) {
            if (idx[k].empty() || idx[k + 1].empty()) continue;
            Matrix sub(c.p, idx[k + 1].size(), idx[k].size());
            for (std::size_t r = 0; r < idx[k + 1].size(); ++r)
                for (std::size_t s = 0; s < idx[k].size(); ++s) sub.set(r, s, c.d[k].at(idx[k + 1][r], idx[k][s]));
            ranks[k] = rank(sub);
        }
        for (std::size_t k = 0; k < c.dims.size(); ++k) {
            std::size_t h = idx[k].size() - (k < ranks.size() ? ranks[k] : 0) - (k > 0 ? ranks[k - 1] : 0);
            if (h) {
                res.observed[{static_cast<int>(k), nu}] = h;
                res.total[k] += h;
            }
        }
    }
    res.predicted = kostant_prediction(v.n, v.mu);
    res.matches = res.observed == res.predicted;
    return res;
}

CoinvariantLine coinvariant_line(const GroupRep& v, std::size_t w)
{
    RootSystem rs('A', v.n - 1);
    auto perm = rs.permutation(w);
    std::vector<RootPair> roots;
    for (int a = 0; a < v.n; ++a)
        for (int b = a + 1; b < v.n; ++b) roots.push_back({perm[a], perm[b]});
    Matrix proj = coinvariant_projection(v, roots);
    if (proj.rows() != 1)
        throw StructuralError("coinvariant_line: coinvariants have dimension " + std::to_string(proj.rows()));
    std::set<Weight> seen;
    for (std::size_t b = 0; b < v.dim; ++b)
        if (proj.at(0, b)) seen.insert(v.weights[b]);
    if (seen.size() != 1) throw StructuralError("coinvariant_line: projection is not a weight functional");
    return CoinvariantLine{*seen.begin(), proj};
}

WitnessCheck witness_cocycle(const GroupRep& v, const CEComplex& ce, std::size_t w)
{
    RootSystem rs('A', v.n - 1);
    NilpotentLie lie(v.n);
    auto perm = rs.permutation(w);
    std::vector<int> inv(v.n);
    for (int k = 0; k < v.n; ++k) inv[perm[k]] = k;
    unsigned mask = 0;
    for (std::size_t a = 0; a < lie.dim(); ++a)
        if (inv[lie.basis[a].i] < inv[lie.basis[a].j]) mask |= 1u << a;
    const Weight target = rs.act(w, rs.act(rs.longest_index(), v.mu));
    std::vector<std::size_t> hits;
    for (std::size_t b = 0; b < v.dim; ++b)
        if (v.weights[b] == target) hits.push_back(b);
    if (hits.size() != 1) throw StructuralError("witness_cocycle: extremal weight space is not a line");

    WitnessCheck out;
    out.degree = __builtin_popcount(mask);
    const auto& subs = ce.subsets[out.degree];
    const std::size_t s = std::find(subs.begin(), subs.end(), mask) - subs.begin();
    const std::size_t coord = s * v.dim + hits[0];
    out.weight = ce.weights[out.degree][coord];
    std::vector<i64> x(ce.complex.dims[out.degree], 0);
    x[coord] = 1;
    const auto& d = ce.complex.d;
    out.closed = true;
    if (static_cast<std::size_t>(out.degree) < d.size())
        for (i64 t : d[out.degree].apply(x)) out.closed &= t == 0;
    out.nonzero_class = out.degree == 0 || !solve_fp(d[out.degree - 1], x).has_value();
    return out;
}

}  // namespace hk
