#include "hk/repmod.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hk {

Weight root_weight(int n, int i, int j)
{
    Weight w{IntVec(n - 1, 0)};
    for (int k = 0; k < n - 1; ++k)
        w.c[k] = (i == k) - (i == k + 1) - (j == k) + (j == k + 1);
    return w;
}

Matrix GroupRep::e_root(int i, int j, int s) const
{
    const auto& ds = divided.at(i * n + j);
    if (s >= 1 && static_cast<std::size_t>(s) <= ds.size()) return ds[s - 1];
    return Matrix(p, dim, dim);
}

Matrix GroupRep::act_lower(const UnipotentElt& g) const
{
    if (g.n() != n || g.modulus() != static_cast<i64>(p))
        throw std::invalid_argument("act_lower: element must be lower unitriangular mod p");
    // g = C_0 C_1 ... C_{n-2} with C_j = prod_{i>j} x_ij(g_ij).
    Matrix out = Matrix::identity(p, dim);
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i)
            if (g.at(i, j) != 0) out = out * x_root(i, j).power(g.at(i, j));
    return out;
}

namespace {

using Vec = std::vector<i64>;

// Tensor product of exterior powers of the standard module.
struct TensorSpace {
    int n = 0;
    std::uint32_t p = 0;
    std::vector<int> degrees;
    std::vector<std::vector<unsigned>> basis;  // per factor, sorted subsets as bitmasks
    std::vector<std::unordered_map<unsigned, int>> index;
    std::vector<std::size_t> stride;
    std::size_t dim = 1;

    TensorSpace(int n_, std::uint32_t p_, const Weight& mu) : n(n_), p(p_)
    {
        for (int i = 0; i < n - 1; ++i)
            for (int a = 0; a < mu.c[i]; ++a) degrees.push_back(i + 1);
        for (int k : degrees) {
            std::vector<unsigned> b;
            for (unsigned m = 0; m < (1u << n); ++m)
                if (__builtin_popcount(m) == k) b.push_back(m);
            std::sort(b.begin(), b.end(), [](unsigned x, unsigned y) {
                // lexicographic on sorted element lists
                for (int t = 0; t < 32; ++t) {
                    bool bx = (x >> t) & 1, by = (y >> t) & 1;
                    if (bx != by) return bx;
                }
                return false;
            });
            std::unordered_map<unsigned, int> idx;
            for (std::size_t t = 0; t < b.size(); ++t) idx[b[t]] = static_cast<int>(t);
            basis.push_back(std::move(b));
            index.push_back(std::move(idx));
        }
        stride.assign(degrees.size(), 1);
        for (std::size_t f = degrees.size(); f-- > 0;) {
            stride[f] = dim;
            dim *= basis[f].size();
        }
    }

    std::vector<unsigned> decode(std::size_t t) const
    {
        std::vector<unsigned> masks(degrees.size());
        for (std::size_t f = 0; f < degrees.size(); ++f) {
            masks[f] = basis[f][t / stride[f]];
            t %= stride[f];
        }
        return masks;
    }

    std::size_t encode(const std::vector<unsigned>& masks) const
    {
        std::size_t t = 0;
        for (std::size_t f = 0; f < masks.size(); ++f) t += index[f].at(masks[f]) * stride[f];
        return t;
    }

    Weight weight_of(std::size_t t) const
    {
        Weight w{IntVec(n - 1, 0)};
        for (unsigned m : decode(t))
            for (int k = 0; k < n - 1; ++k) w.c[k] += static_cast<int>((m >> k) & 1) - static_cast<int>((m >> (k + 1)) & 1);
        return w;
    }

    // e_ij^(s) applied to y; e_ij^2 = 0 on each exterior power, so the
    // divided power is a sum over s-element sets of tensor factors.
    Vec apply(int i, int j, int s, const Vec& y) const
    {
        Vec out(dim, 0);
        const int lo = std::min(i, j), hi = std::max(i, j);
        const unsigned between = ((1u << hi) - 1) & ~((1u << (lo + 1)) - 1);
        for (std::size_t t = 0; t < dim; ++t) {
            if (y[t] == 0) continue;
            auto masks = decode(t);
            std::vector<std::size_t> active;
            std::vector<unsigned> image(masks.size());
            std::vector<int> sign(masks.size());
            for (std::size_t f = 0; f < masks.size(); ++f) {
                unsigned m = masks[f];
                if (((m >> j) & 1) && !((m >> i) & 1)) {
                    active.push_back(f);
                    image[f] = (m & ~(1u << j)) | (1u << i);
                    sign[f] = (__builtin_popcount(m & between) & 1) ? -1 : 1;
                }
            }
            if (static_cast<int>(active.size()) < s) continue;
            // enumerate s-subsets of active factors
            std::vector<int> pick(s);
            for (int a = 0; a < s; ++a) pick[a] = a;
            while (true) {
                auto nm = masks;
                int sg = 1;
                for (int a = 0; a < s; ++a) {
                    nm[active[pick[a]]] = image[active[pick[a]]];
                    sg *= sign[active[pick[a]]];
                }
                std::size_t u = encode(nm);
                out[u] = mod_reduce(out[u] + sg * y[t], p);
                int a = s - 1;
                while (a >= 0 && pick[a] == static_cast<int>(active.size()) - s + a) --a;
                if (a < 0) break;
                ++pick[a];
                for (int b = a + 1; b < s; ++b) pick[b] = pick[b - 1] + 1;
            }
        }
        return out;
    }
};

struct WeightKey {
    int depth;
    Weight w;
    bool operator<(const WeightKey& o) const { return depth != o.depth ? depth < o.depth : w > o.w; }
};

struct WeightBlock {
    std::vector<Vec> rows;           // basis of M in this weight, echelon-reduced
    std::vector<std::size_t> pivot;  // pivot coordinate per row
};

bool reduce_into(WeightBlock& blk, Vec v, std::uint32_t p)
{
    for (std::size_t r = 0; r < blk.rows.size(); ++r) {
        i64 f = v[blk.pivot[r]];
        if (f == 0) continue;
        for (std::size_t t = 0; t < v.size(); ++t)
            if (blk.rows[r][t]) v[t] = mod_reduce(v[t] - f * blk.rows[r][t], p);
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return false;
    i64 inv = mod_inverse(v[piv], p);
    for (auto& x : v) x = x * inv % p;
    blk.rows.push_back(std::move(v));
    blk.pivot.push_back(piv);
    return true;
}

}  // namespace

GroupRep build_simple_module(int n, std::uint32_t p, const Weight& mu)
{
    if (n < 2 || n > 4) throw std::invalid_argument("build_simple_module: need 2 <= n <= 4");
    if (static_cast<int>(mu.c.size()) != n - 1) throw std::invalid_argument("build_simple_module: weight has wrong rank");
    for (int a : mu.c)
        if (a < 0 || a >= static_cast<int>(p))
            throw std::invalid_argument("build_simple_module: weight is not p-restricted");

    TensorSpace ts(n, p, mu);
    const int factors = static_cast<int>(ts.degrees.size());

    // Cyclic submodule generated by the highest vector under lowering divided powers.
    std::map<WeightKey, WeightBlock> blocks;
    std::deque<std::pair<WeightKey, Vec>> queue;
    {
        std::vector<unsigned> top;
        for (int k : ts.degrees) top.push_back((1u << k) - 1);
        Vec v(ts.dim, 0);
        v[ts.encode(top)] = 1;
        WeightKey key{0, ts.weight_of(ts.encode(top))};
        reduce_into(blocks[key], v, p);
        queue.emplace_back(key, blocks[key].rows.back());
    }
    while (!queue.empty()) {
        auto [key, v] = queue.front();
        queue.pop_front();
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < i; ++j)
                for (int s = 1; s <= factors; ++s) {
                    Vec w = ts.apply(i, j, s, v);
                    if (std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; })) continue;
                    Weight wt = key.w;
                    Weight rw = root_weight(n, i, j);
                    for (int k = 0; k < n - 1; ++k) wt.c[k] += s * rw.c[k];
                    WeightKey nk{key.depth + s * (i - j), wt};
                    auto& blk = blocks[nk];
                    if (reduce_into(blk, w, p)) queue.emplace_back(nk, blk.rows.back());
                }
    }

    // Quotient by the radical of the form, weight space by weight space.
    struct Piece {
        Weight w;
        std::vector<std::size_t> support;  // tensor coordinates of this weight
        std::vector<Vec> rows;             // M basis restricted to support
        std::vector<std::size_t> chosen;   // representatives
        Matrix inv;                        // inverse of Gram[chosen, chosen]
        std::size_t offset = 0;
    };
    std::vector<Piece> pieces;
    std::map<Weight, std::size_t> piece_of;
    GroupRep rep;
    rep.n = n;
    rep.p = p;
    rep.mu = mu;
    std::vector<Vec> rep_vectors;  // full tensor vectors of the chosen basis
    {
        std::map<Weight, std::vector<std::size_t>> support;
        for (std::size_t t = 0; t < ts.dim; ++t) support[ts.weight_of(t)].push_back(t);
        for (auto& [key, blk] : blocks) {
            Piece pc;
            pc.w = key.w;
            pc.support = support.at(key.w);
            for (const auto& r : blk.rows) {
                Vec restricted;
                for (auto t : pc.support) restricted.push_back(r[t]);
                pc.rows.push_back(std::move(restricted));
            }
            const std::size_t k = pc.rows.size();
            Matrix gram(p, k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) {
                    i64 s = 0;
                    for (std::size_t t = 0; t < pc.support.size(); ++t) s = (s + pc.rows[a][t] * pc.rows[b][t]) % p;
                    gram.set(a, b, s);
                }
            pc.chosen = independent_columns(gram);
            if (pc.chosen.empty()) continue;
            Matrix sub(p, pc.chosen.size(), pc.chosen.size());
            for (std::size_t a = 0; a < pc.chosen.size(); ++a)
                for (std::size_t b = 0; b < pc.chosen.size(); ++b) sub.set(a, b, gram.at(pc.chosen[a], pc.chosen[b]));
            pc.inv = inverse_fp(sub);
            pc.offset = rep.dim;
            for (auto c : pc.chosen) {
                rep.weights.push_back(pc.w);
                rep_vectors.push_back(blk.rows[c]);
            }
            rep.dim += pc.chosen.size();
            piece_of[pc.w] = pieces.size();
            pieces.push_back(std::move(pc));
        }
    }

    auto coordinates = [&](const Vec& y) {
        Vec c(rep.dim, 0);
        for (const auto& pc : pieces) {
            std::vector<i64> f(pc.chosen.size(), 0);
            bool nonzero = false;
            for (std::size_t a = 0; a < pc.chosen.size(); ++a) {
                const Vec& r = pc.rows[pc.chosen[a]];
                i64 s = 0;
                for (std::size_t t = 0; t < pc.support.size(); ++t)
                    if (r[t]) s = (s + r[t] * y[pc.support[t]]) % p;
                f[a] = s;
                nonzero |= s != 0;
            }
            if (!nonzero) continue;
            auto sol = pc.inv.apply(f);
            for (std::size_t a = 0; a < sol.size(); ++a) c[pc.offset + a] = sol[a];
        }
        return c;
    };

    rep.divided.resize(n * n);
    rep.x.resize(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            std::vector<Matrix> ds;
            for (int s = 1; s <= factors; ++s) {
                Matrix e(p, rep.dim, rep.dim);
                for (std::size_t b = 0; b < rep.dim; ++b) {
                    Vec img = ts.apply(i, j, s, rep_vectors[b]);
                    auto c = coordinates(img);
                    for (std::size_t a = 0; a < rep.dim; ++a)
                        if (c[a]) e.set(a, b, c[a]);
                }
                ds.push_back(std::move(e));
            }
            while (!ds.empty() && ds.back().is_zero()) ds.pop_back();
            Matrix x = Matrix::identity(p, rep.dim);
            for (const auto& e : ds) x = x + e;
            rep.divided[i * n + j] = std::move(ds);
            rep.x[i * n + j] = std::move(x);
        }

    auto cert = irreducibility_check(rep);
    if (!cert.passed)
        throw StructuralError("build_simple_module: irreducibility certificate failed (invariants " +
                              std::to_string(cert.invariants_dim) + ", composite rank " +
                              std::to_string(cert.composite_rank) + ")");
    return rep;
}

GroupRep trivial_module(int n, std::uint32_t p) { return build_simple_module(n, p, Weight{IntVec(n - 1, 0)}); }

GroupRep direct_sum(const GroupRep& a, const GroupRep& b)
{
    if (a.n != b.n || a.p != b.p) throw std::invalid_argument("direct_sum: incompatible modules");
    GroupRep s;
    s.n = a.n;
    s.p = a.p;
    s.mu = a.mu;
    s.dim = a.dim + b.dim;
    s.weights = a.weights;
    s.weights.insert(s.weights.end(), b.weights.begin(), b.weights.end());
    auto diag = [&](const Matrix& x, const Matrix& y) {
        Matrix m(s.p, s.dim, s.dim);
        m.add_block(0, 0, x);
        m.add_block(a.dim, a.dim, y);
        return m;
    };
    s.divided.resize(s.n * s.n);
    s.x.resize(s.n * s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
            if (i == j) continue;
            std::size_t len = std::max(a.divided[i * s.n + j].size(), b.divided[i * s.n + j].size());
            for (std::size_t t = 1; t <= len; ++t)
                s.divided[i * s.n + j].push_back(diag(a.e_root(i, j, t), b.e_root(i, j, t)));
            s.x[i * s.n + j] = diag(a.x_root(i, j), b.x_root(i, j));
        }
    return s;
}

Matrix subgroup_invariants(const GroupRep& v, const std::vector<RootPair>& roots)
{
    if (roots.empty()) return Matrix::identity(v.p, v.dim);
    Matrix stacked(v.p, v.dim * roots.size(), v.dim);
    Matrix id = Matrix::identity(v.p, v.dim);
    for (std::size_t r = 0; r < roots.size(); ++r)
        stacked.add_block(r * v.dim, 0, v.x_root(roots[r].i, roots[r].j) - id);
    return null_space(stacked);
}

Matrix coinvariant_projection(const GroupRep& v, const std::vector<RootPair>& roots)
{
    if (roots.empty()) return Matrix::identity(v.p, v.dim);
    Matrix side(v.p, v.dim, v.dim * roots.size());
    Matrix id = Matrix::identity(v.p, v.dim);
    for (std::size_t r = 0; r < roots.size(); ++r)
        side.add_block(0, r * v.dim, v.x_root(roots[r].i, roots[r].j) - id);
    return left_null_space(side);
}

IrreducibilityCertificate irreducibility_check(const GroupRep& v)
{
    std::vector<RootPair> pos, neg;
    for (int i = 0; i < v.n; ++i)
        for (int j = 0; j < v.n; ++j) {
            if (i < j) pos.push_back({i, j});
            if (i > j) neg.push_back({i, j});
        }
    Matrix inv = subgroup_invariants(v, pos);
    Matrix proj = coinvariant_projection(v, neg);
    IrreducibilityCertificate c;
    c.invariants_dim = inv.cols();
    c.coinvariants_dim = proj.rows();
    c.composite_rank = (c.invariants_dim && c.coinvariants_dim) ? rank(proj * inv) : 0;
    c.passed = c.invariants_dim == 1 && c.coinvariants_dim == 1 && c.composite_rank == 1;
    return c;
}

std::vector<RootPair> radical_roots(int n, int k)
{
    std::vector<RootPair> out;
    for (int i = 0; i <= k; ++i)
        for (int j = k + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

std::vector<RootPair> opposite_radical_roots(int n, int k)
{
    std::vector<RootPair> out;
    for (int i = k + 1; i < n; ++i)
        for (int j = 0; j <= k; ++j) out.push_back({i, j});
    return out;
}

XiMap xi_map(const GroupRep& v, int k)
{
    if (k < 0 || k >= v.n - 1) throw std::invalid_argument("xi_map: coweight index out of range");
    XiMap xi;
    xi.k = k;
    Matrix b = subgroup_invariants(v, opposite_radical_roots(v.n, k));
    Matrix pr = coinvariant_projection(v, radical_roots(v.n, k));
    if (b.cols() != pr.rows())
        throw StructuralError("xi_map: invariants and coinvariants differ in dimension");
    Matrix c = pr * b;
    if (rank(c) != c.rows()) throw StructuralError("xi_map: invariants -> coinvariants is not bijective");
    xi.matrix = b * inverse_fp(c) * pr;
    xi.rank = b.cols();
    return xi;
}

bool root_string_bound(const GroupRep& v)
{
    std::set<Weight> support(v.weights.begin(), v.weights.end());
    for (const auto& w : support)
        for (int k = 0; k + 1 < v.n; ++k) {
            Weight a = root_weight(v.n, k, k + 1);
            Weight cur = w;
            const int reach = 2 * static_cast<int>(v.p) * v.n + 2;  // past any weight of a restricted module
            for (int s = 1; s <= reach; ++s) {
                for (int t = 0; t < v.n - 1; ++t) cur.c[t] -= a.c[t];
                if (support.count(cur) && s >= static_cast<int>(v.p)) return false;
            }
        }
    return true;
}

}  // namespace hk
