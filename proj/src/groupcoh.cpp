#include "hk/groupcoh.hpp"

#include "hk/rootdata.hpp"
#include "hk/unipotent.hpp"

#include <deque>
#include <random>
#include <stdexcept>

namespace hk {

namespace {

i64 code(const U3Elt& e, i64 q) { return (e.a12 * q + e.a13) * q + e.a23; }

U3Elt multiply(const U3Elt& x, const U3Elt& y, i64 q)
{
    // (xy)_13 = x13 + y13 + x12 y23
    return U3Elt{(x.a12 + y.a12) % q, (x.a13 + y.a13 + x.a12 * y.a23) % q, (x.a23 + y.a23) % q};
}

i64 half_sq_minus(i64 x) { return (x * x - x) / 2; }

std::size_t ipow(std::size_t b, int e)
{
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

std::optional<std::size_t> FiniteGroup::index_of(const U3Elt& e) const
{
    i64 c = code(e, modulus);
    if (c < 0 || c >= static_cast<i64>(slot.size()) || slot[c] < 0) return std::nullopt;
    return static_cast<std::size_t>(slot[c]);
}

FiniteGroup subgroup_by_indices(const FiniteGroup& g, const std::vector<std::size_t>& members, const std::vector<U3Elt>& gens)
{
    FiniteGroup h;
    h.p = g.p;
    h.modulus = g.modulus;
    h.slot.assign(g.slot.size(), -1);
    for (std::size_t i : members) {
        h.slot[code(g.elts[i], g.modulus)] = static_cast<std::int64_t>(h.elts.size());
        h.elts.push_back(g.elts[i]);
    }
    const std::size_t n = h.elts.size();
    h.mul.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto idx = h.index_of(g.elts[g.product(members[a], members[b])]);
            if (!idx) throw StructuralError("subgroup: not closed under multiplication");
            h.mul[a * n + b] = static_cast<std::uint32_t>(*idx);
        }
    auto id = h.index_of(U3Elt{});
    if (!id) throw StructuralError("subgroup: identity missing");
    h.identity = *id;
    for (const auto& x : gens) {
        auto idx = h.index_of(x);
        if (!idx) throw StructuralError("subgroup: generator outside the subgroup");
        h.generators.push_back(*idx);
    }
    // generators must reach every element
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{h.identity};
    seen[h.identity] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t s : h.generators) {
            std::size_t y = h.product(s, x);
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                queue.push_back(y);
            }
        }
    }
    if (reached != n) throw StructuralError("subgroup: generators do not generate");
    return h;
}

FiniteGroup unipotent_quotient(std::uint32_t p, int m, U3Subgroup which)
{
    if (m < 1) throw std::invalid_argument("unipotent_quotient: level must be >= 1");
    const i64 q = int_pow(p, m);
    if (q * q * q > (1 << 20)) throw std::invalid_argument("unipotent_quotient: group too large");
    FiniteGroup g;
    g.p = p;
    g.modulus = q;
    g.slot.assign(q * q * q, -1);
    for (i64 a = 0; a < q; ++a)
        for (i64 b = 0; b < q; ++b)
            for (i64 c = 0; c < q; ++c) {
                g.slot[code({a, b, c}, q)] = static_cast<std::int64_t>(g.elts.size());
                g.elts.push_back({a, b, c});
            }
    const std::size_t n = g.elts.size();
    g.mul.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.mul[i * n + j] = static_cast<std::uint32_t>(*g.index_of(multiply(g.elts[i], g.elts[j], q)));
    g.identity = 0;
    const U3Elt x12{1, 0, 0}, x13{0, 1, 0}, x23{0, 0, 1};
    g.generators = {*g.index_of(x12), *g.index_of(x23)};
    switch (which) {
    case U3Subgroup::Full:
        return g;
    case U3Subgroup::N12:
        return subgroup_of(g, [](const U3Elt& e) { return e.a12 == 0; }, {x13, x23});
    case U3Subgroup::N23:
        return subgroup_of(g, [](const U3Elt& e) { return e.a23 == 0; }, {x12, x13});
    case U3Subgroup::N12_13:
        return subgroup_of(g, [](const U3Elt& e) { return e.a12 == 0 && e.a13 == 0; }, {x23});
    case U3Subgroup::N23_13:
        return subgroup_of(g, [](const U3Elt& e) { return e.a23 == 0 && e.a13 == 0; }, {x12});
    }
    return g;
}

bool NormalizedCochain::is_normalized(std::size_t identity) const
{
    const std::size_t total = values.size();
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t rest = t;
        for (int k = 0; k < degree; ++k, rest /= order)
            if (rest % order == identity && values[t] != 0) return false;
    }
    return true;
}

NormalizedCochain zero_cochain(const FiniteGroup& g, int degree)
{
    return NormalizedCochain{degree, g.order(), g.p, std::vector<i64>(ipow(g.order(), degree), 0)};
}

NormalizedCochain tabulate1(const FiniteGroup& g, i64 (*f)(const U3Elt&, i64))
{
    NormalizedCochain c = zero_cochain(g, 1);
    for (std::size_t i = 0; i < g.order(); ++i) c.values[i] = mod_reduce(f(g.elts[i], g.p), g.p);
    return c;
}

NormalizedCochain tabulate2(const FiniteGroup& g, i64 (*f)(const U3Elt&, const U3Elt&, i64))
{
    NormalizedCochain c = zero_cochain(g, 2);
    const std::size_t n = g.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c.values[i * n + j] = mod_reduce(f(g.elts[i], g.elts[j], g.p), g.p);
    return c;
}

NormalizedCochain cup(const NormalizedCochain& a, const NormalizedCochain& b)
{
    if (a.order != b.order || a.p != b.p) throw std::invalid_argument("cup: cochains on different groups");
    NormalizedCochain c{a.degree + b.degree, a.order, a.p, {}};
    c.values.resize(a.values.size() * b.values.size());
    for (std::size_t x = 0; x < a.values.size(); ++x)
        for (std::size_t y = 0; y < b.values.size(); ++y)
            c.values[x * b.values.size() + y] = a.values[x] * b.values[y] % a.p;
    return c;
}

NormalizedCochain restrict_to(const NormalizedCochain& c, const FiniteGroup& g, const FiniteGroup& h)
{
    if (c.degree > 2) throw std::invalid_argument("restrict_to: degree <= 2 only");
    std::vector<std::size_t> into(h.order());
    for (std::size_t i = 0; i < h.order(); ++i) {
        auto idx = g.index_of(h.elts[i]);
        if (!idx) throw std::invalid_argument("restrict_to: h is not a subgroup of g");
        into[i] = *idx;
    }
    NormalizedCochain r = zero_cochain(h, c.degree);
    if (c.degree == 0) r.values = c.values;
    if (c.degree == 1)
        for (std::size_t i = 0; i < h.order(); ++i) r.values[i] = c.at(into[i]);
    if (c.degree == 2)
        for (std::size_t i = 0; i < h.order(); ++i)
            for (std::size_t j = 0; j < h.order(); ++j) r.values[i * h.order() + j] = c.at(into[i], into[j]);
    return r;
}

NormalizedCochain coboundary(const NormalizedCochain& c, const FiniteGroup& g)
{
    const std::size_t n = g.order();
    const i64 p = g.p;
    if (c.order != n) throw std::invalid_argument("coboundary: cochain lives on another group");
    NormalizedCochain d = zero_cochain(g, c.degree + 1);
    switch (c.degree) {
    case 0:
        break;  // trivial action: d of a constant is zero
    case 1:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d.values[i * n + j] = mod_reduce(c.at(j) - c.at(g.product(i, j)) + c.at(i), p);
        break;
    case 2:
        if (n * n * n > 50'000'000) throw std::invalid_argument("coboundary: 3-cochain table too large");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t ij = g.product(i, j);
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t jk = g.product(j, k);
                    d.values[(i * n + j) * n + k] =
                        mod_reduce(c.at(j, k) - c.at(ij, k) + c.at(i, jk) - c.at(i, j), p);
                }
            }
        break;
    default:
        throw std::invalid_argument("coboundary: degree <= 2 only");
    }
    return d;
}

i64 alpha12(const U3Elt& a, i64 p) { return mod_reduce(a.a12, p); }
i64 alpha23(const U3Elt& a, i64 p) { return mod_reduce(a.a23, p); }

i64 gamma1(const U3Elt& a, const U3Elt& b, i64 p)
{
    return mod_reduce(a.a13 * b.a23 + a.a12 * half_sq_minus(b.a23), p);
}

i64 gamma2(const U3Elt& a, const U3Elt& b, i64 p)
{
    return mod_reduce(a.a12 * b.a13 + half_sq_minus(a.a12) * b.a23, p);
}

Matrix hom_basis(const FiniteGroup& g)
{
    // b(s x) = b(s) + b(x) for generators s and all x; columns skip the identity
    const std::size_t n = g.order();
    auto col = [&](std::size_t i) { return i < g.identity ? i : i - 1; };
    Matrix eq(g.p, g.generators.size() * n, n - 1);
    std::size_t row = 0;
    for (std::size_t s : g.generators)
        for (std::size_t x = 0; x < n; ++x, ++row) {
            std::size_t sx = g.product(s, x);
            if (sx != g.identity) eq.add(row, col(sx), 1);
            if (s != g.identity) eq.add(row, col(s), -1);
            if (x != g.identity) eq.add(row, col(x), -1);
        }
    return null_space(eq);
}

std::size_t h1_dimension(const FiniteGroup& g) { return hom_basis(g).cols(); }

bool is_2cocycle(const NormalizedCochain& c, const FiniteGroup& g, std::size_t samples, std::uint64_t seed,
                 std::size_t exhaustive_limit)
{
    if (c.degree != 2 || !c.is_normalized(g.identity)) return false;
    const std::size_t n = g.order();
    const i64 p = g.p;
    auto ok = [&](std::size_t i, std::size_t j, std::size_t k) {
        return mod_reduce(c.at(j, k) - c.at(g.product(i, j), k) + c.at(i, g.product(j, k)) - c.at(i, j), p) == 0;
    };
    if (n * n * n <= exhaustive_limit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (!ok(i, j, k)) return false;
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s)
        if (!ok(pick(rng), pick(rng), pick(rng))) return false;
    return true;
}

CoboundaryResult solve_coboundary_linear(const NormalizedCochain& c, const FiniteGroup& g)
{
    const std::size_t n = g.order();
    auto col = [&](std::size_t i) { return i < g.identity ? i : i - 1; };
    StreamingSolver solver(g.p, n - 1);
    CoboundaryResult res;
    for (std::size_t i = 0; i < n && solver.consistent(); ++i)
        for (std::size_t j = 0; j < n && solver.consistent(); ++j) {
            if (i == g.identity || j == g.identity) continue;
            // b(j) - b(ij) + b(i) = c(i, j)
            std::vector<std::pair<std::size_t, i64>> row{{col(i), 1}, {col(j), 1}};
            std::size_t ij = g.product(i, j);
            if (ij != g.identity) row.push_back({col(ij), -1});
            solver.add_equation(row, c.at(i, j));
        }
    res.rows_used = solver.rows_seen();
    res.coboundary = solver.consistent();
    if (res.coboundary) {
        auto x = solver.witness();
        res.witness.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (i != g.identity) res.witness[i] = x[col(i)];
    }
    return res;
}

CoboundaryResult solve_coboundary_propagate(const NormalizedCochain& c, const FiniteGroup& g)
{
    const std::size_t n = g.order();
    const i64 p = g.p;
    const std::size_t ngens = g.generators.size();
    CoboundaryResult res;
    const std::size_t candidates = ipow(static_cast<std::size_t>(p), static_cast<int>(ngens));
    for (std::size_t choice = 0; choice < candidates; ++choice) {
        std::vector<i64> b(n, 0);
        std::vector<bool> known(n, false);
        known[g.identity] = true;
        std::size_t rest = choice;
        for (std::size_t s : g.generators) {
            b[s] = static_cast<i64>(rest % p);
            rest /= p;
        }
        std::deque<std::size_t> queue{g.identity};
        bool clash = false;
        while (!queue.empty() && !clash) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t s : g.generators) {
                std::size_t sx = g.product(s, x);
                i64 v = mod_reduce(b[s] + b[x] - c.at(s, x), p);
                if (!known[sx]) {
                    known[sx] = true;
                    b[sx] = v;
                    queue.push_back(sx);
                } else if (b[sx] != v) {
                    clash = true;
                    break;
                }
            }
        }
        if (clash) continue;
        bool good = true;
        for (std::size_t i = 0; i < n && good; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ++res.rows_used;
                if (mod_reduce(b[j] - b[g.product(i, j)] + b[i] - c.at(i, j), p) != 0) {
                    good = false;
                    break;
                }
            }
        if (good) {
            res.coboundary = true;
            res.witness = b;
            return res;
        }
    }
    return res;
}

CoboundaryResult solve_coboundary(const NormalizedCochain& c, const FiniteGroup& g)
{
    if (c.degree != 2) throw std::invalid_argument("solve_coboundary: 2-cochains only");
    return g.order() <= 128 ? solve_coboundary_linear(c, g) : solve_coboundary_propagate(c, g);
}

bool zeta_is_cocycle(const FiniteGroup& g, const NormalizedCochain& g1, const NormalizedCochain& a12,
                     std::size_t samples, std::uint64_t seed, std::size_t exhaustive_limit)
{
    const std::size_t n = g.order();
    const i64 p = g.p;
    auto z = [&](std::size_t a, std::size_t b, std::size_t c) { return g1.at(a, b) * a12.at(c); };
    auto ok = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        i64 v = z(j, k, l) - z(g.product(i, j), k, l) + z(i, g.product(j, k), l) - z(i, j, g.product(k, l)) + z(i, j, k);
        return mod_reduce(v, p) == 0;
    };
    if (n * n * n * n <= exhaustive_limit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        if (!ok(i, j, k, l)) return false;
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s)
        if (!ok(pick(rng), pick(rng), pick(rng), pick(rng))) return false;
    return true;
}

ZetaSolve zeta_coboundary_solve(const FiniteGroup& g, const NormalizedCochain& g1, const NormalizedCochain& a12)
{
    const std::size_t n = g.order();
    auto col = [&](std::size_t i) { return i < g.identity ? i : i - 1; };
    auto var = [&](std::size_t i, std::size_t j) { return col(i) * (n - 1) + col(j); };
    StreamingSolver solver(g.p, (n - 1) * (n - 1));
    ZetaSolve res;
    for (std::size_t i = 0; i < n && solver.consistent(); ++i) {
        if (i == g.identity) continue;
        for (std::size_t j = 0; j < n && solver.consistent(); ++j) {
            if (j == g.identity) continue;
            const std::size_t ij = g.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == g.identity) continue;
                const std::size_t jk = g.product(j, k);
                // c(j,k) - c(ij,k) + c(i,jk) - c(i,j) = zeta(i,j,k)
                std::vector<std::pair<std::size_t, i64>> row{{var(j, k), 1}, {var(i, j), -1}};
                if (ij != g.identity) row.push_back({var(ij, k), -1});
                if (jk != g.identity) row.push_back({var(i, jk), 1});
                if (!solver.add_equation(row, g1.at(i, j) * a12.at(k))) break;
            }
        }
    }
    res.coboundary = solver.consistent();
    res.rows = solver.rows_seen();
    res.rank = solver.rank();
    return res;
}

bool U3SuiteReport::all_passed() const
{
    for (const auto& it : items)
        if (!it.passed) return false;
    return !items.empty();
}

U3SuiteReport verify_u3_suite(std::uint32_t p, int m, const U3SuiteOptions& opt)
{
    if (p != 2 && p != 3) throw std::invalid_argument("U_3 cocycle suite: p must be 2 or 3");
    U3SuiteReport rep;
    rep.p = p;
    rep.m = m;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.items.push_back({std::move(name), ok, std::move(detail)});
    };

    FiniteGroup g = unipotent_quotient(p, m);
    auto a12 = tabulate1(g, alpha12), a23 = tabulate1(g, alpha23);
    auto g1 = tabulate2(g, gamma1), g2 = tabulate2(g, gamma2);
    auto nonid = [&](const NormalizedCochain& c) {
        std::vector<i64> v;
        for (std::size_t i = 0; i < g.order(); ++i)
            if (i != g.identity) v.push_back(c.at(i));
        return v;
    };

    // H^1
    {
        Matrix z1 = hom_basis(g);
        Matrix both(p, g.order() - 1, z1.cols() + 2);
        both.add_block(0, 0, z1);
        auto v12 = nonid(a12), v23 = nonid(a23);
        Matrix alphas(p, g.order() - 1, 2);
        for (std::size_t r = 0; r < v12.size(); ++r) {
            both.set(r, z1.cols(), v12[r]);
            both.set(r, z1.cols() + 1, v23[r]);
            alphas.set(r, 0, v12[r]);
            alphas.set(r, 1, v23[r]);
        }
        bool ok = z1.cols() == 2 && rank(both) == 2 && rank(alphas) == 2;
        add("H1 is spanned by alpha12, alpha23", ok, "dim Z1 = " + std::to_string(z1.cols()));
    }

    // H^2 basis
    const bool exact_triples = static_cast<std::size_t>(g.order()) <= 128;
    add("gamma1 is a normalized 2-cocycle", is_2cocycle(g1, g, opt.samples, opt.seed),
        exact_triples ? "exhaustive" : "sampled");
    add("gamma2 is a normalized 2-cocycle", is_2cocycle(g2, g, opt.samples, opt.seed + 1),
        exact_triples ? "exhaustive" : "sampled");
    {
        bool ok = true;
        std::string bad;
        for (i64 s = 0; s < p; ++s)
            for (i64 t = 0; t < p; ++t) {
                if (s == 0 && t == 0) continue;
                NormalizedCochain c = g1;
                for (std::size_t x = 0; x < c.values.size(); ++x) c.values[x] = mod_reduce(s * g1.values[x] + t * g2.values[x], p);
                if (solve_coboundary(c, g).coboundary) {
                    ok = false;
                    bad += " (" + std::to_string(s) + "," + std::to_string(t) + ")";
                }
            }
        add("no nonzero combination of gamma1, gamma2 is a coboundary", ok, bad);
    }

    // cup products
    {
        std::vector<const NormalizedCochain*> ones{&a12, &a23};
        bool ok = true;
        for (auto* x : ones)
            for (auto* y : ones) ok &= solve_coboundary(cup(*x, *y), g).coboundary;
        add("cup products of H1 classes are coboundaries", ok);
    }

    // restrictions
    {
        FiniteGroup h1 = unipotent_quotient(p, m, U3Subgroup::N12_13);
        FiniteGroup h2 = unipotent_quotient(p, m, U3Subgroup::N23_13);
        Matrix res(p, 2, 2);
        const std::vector<const NormalizedCochain*> ones{&a12, &a23};
        for (std::size_t a = 0; a < 2; ++a) {
            res.set(a, 0, restrict_to(*ones[a], g, h1).at(h1.generators[0]));
            res.set(a, 1, restrict_to(*ones[a], g, h2).at(h2.generators[0]));
        }
        bool ok = h1_dimension(h1) == 1 && h1_dimension(h2) == 1 && rank(res) == 2;
        add("H1 restricts isomorphically to N(12),(13) + N(23),(13)", ok);
    }
    {
        FiniteGroup n12 = unipotent_quotient(p, m, U3Subgroup::N12);
        FiniteGroup n23 = unipotent_quotient(p, m, U3Subgroup::N23);
        auto r1_12 = solve_coboundary(restrict_to(g1, g, n12), n12);
        auto r2_12 = solve_coboundary(restrict_to(g2, g, n12), n12);
        auto r1_23 = solve_coboundary(restrict_to(g1, g, n23), n23);
        auto r2_23 = solve_coboundary(restrict_to(g2, g, n23), n23);
        rep.gamma2_on_n12_witness = r2_12.witness;
        add("gamma1 on N(12) is a nonzero class", !r1_12.coboundary);
        add("gamma2 on N(12) is the zero class", r2_12.coboundary);
        add("gamma2 on N(23) is a nonzero class", !r2_23.coboundary);
        add("gamma1 on N(23) is the zero class", r1_23.coboundary);
    }

    // H^3
    {
        const std::size_t n = g.order();
        add("zeta = gamma1 u alpha12 is a 3-cocycle", zeta_is_cocycle(g, g1, a12, opt.samples, opt.seed + 2),
            n * n * n * n <= 20'000'000 ? "exhaustive" : "sampled");
    }
    if (opt.zeta_non_coboundary) {
        if (p != 2) throw std::invalid_argument("zeta non-coboundary check is available for p = 2 only");
        ZetaSolve z = zeta_coboundary_solve(g, g1, a12);
        add("zeta is not a coboundary", !z.coboundary,
            "rows " + std::to_string(z.rows) + ", rank " + std::to_string(z.rank));
    }
    return rep;
}

bool restriction_zero_check(std::uint32_t p, int m, i64 step)
{
    FiniteGroup line = unipotent_quotient(p, m, U3Subgroup::N23_13);
    Matrix homs = hom_basis(line);
    auto col = [&](std::size_t i) { return i < line.identity ? i : i - 1; };
    for (std::size_t i = 0; i < line.order(); ++i) {
        if (i == line.identity || line.elts[i].a12 % step != 0) continue;
        for (std::size_t k = 0; k < homs.cols(); ++k)
            if (homs.at(col(i), k) != 0) return false;
    }
    return true;
}

}  // namespace hk
