#include "hk/apartment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace hk {

namespace {

std::vector<QVec> inverse_q(std::vector<QVec> a)
{
    const std::size_t n = a.size();
    std::vector<QVec> inv(n, QVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw StructuralError("apartment: singular matrix");
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        mpq_class f = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= f;
            inv[c][j] /= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class g = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= g * a[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

int sign_of(const mpq_class& x) { return sgn(x); }

// Calls f on every tuple (w_lambda) for lambda in q, as a vector of Weyl indices.
void for_each_tuple(std::size_t order, int size, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> t(size, 0);
    while (true) {
        f(t);
        int k = 0;
        while (k < size && ++t[k] == order) t[k++] = 0;
        if (k == size) return;
    }
}

std::vector<int> members_of(NablaSet q, int r)
{
    std::vector<int> out;
    for (int k = 0; k < r; ++k)
        if ((q >> k) & 1) out.push_back(k);
    return out;
}

IntVec add(IntVec a, const IntVec& b, int s = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

}  // namespace

QVec to_q(const IntVec& v)
{
    QVec q;
    for (int x : v) q.emplace_back(x);
    return q;
}

ApartmentModel::ApartmentModel(char series, int rank) : rs_(series, rank)
{
    const IntMat& a = rs_.cartan();
    const int r = rank;
    // e_j = |alpha_j^v|^2 / 2, from A[i][j] e_j = A[j][i] e_i along the diagram
    QVec e(r, 0);
    e[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < r; ++j)
            if (j != i && a[i][j] != 0 && e[j] == 0) {
                e[j] = e[i] * a[j][i] / a[i][j];
                stack.push_back(j);
            }
    }
    mpq_class lo = *std::min_element(e.begin(), e.end());
    for (auto& x : e) x /= lo;
    std::vector<QVec> at(r, QVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) at[i][j] = a[j][i];
    auto inv_t = inverse_q(at);
    gram_.assign(r, QVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram_[i][j] = e[i] * inv_t[i][j];
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (gram_[i][j] != gram_[j][i]) throw StructuralError("apartment: Gram matrix is not symmetric");
    // highest root = the positive root of largest height
    highest_ = rs_.positive_roots().front();
    auto height = [](const IntVec& v) { return std::accumulate(v.begin(), v.end(), 0); };
    for (const auto& root : rs_.positive_roots())
        if (height(root) > height(highest_)) highest_ = root;
}

mpq_class ApartmentModel::norm2(const QVec& v) const
{
    mpq_class s = 0;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) s += v[i] * gram_[i][j] * v[j];
    return s;
}

mpq_class ApartmentModel::dist2(const QVec& a, const QVec& b) const
{
    QVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return norm2(d);
}

QVec ApartmentModel::act(std::size_t w, const QVec& x) const
{
    const IntMat& m = rs_.weyl()[w].on_coweights;
    QVec y(rank(), 0);
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) y[i] += m[i][j] * x[j];
    return y;
}

IntVec ApartmentModel::act(std::size_t w, const IntVec& x) const { return rs_.act(w, Coweight{x}).c; }

mpq_class ApartmentModel::pair(const IntVec& root, const QVec& x) const
{
    mpq_class s = 0;
    for (int i = 0; i < rank(); ++i) s += root[i] * x[i];
    return s;
}

bool ApartmentModel::in_closed_cone(const QVec& x) const
{
    return std::all_of(x.begin(), x.end(), [](const mpq_class& t) { return t >= 0; });
}

bool ApartmentModel::in_open_anticone(const QVec& x) const
{
    return std::all_of(x.begin(), x.end(), [](const mpq_class& t) { return t < 0; });
}

bool ApartmentModel::in_base_alcove(const QVec& x) const
{
    return std::all_of(x.begin(), x.end(), [](const mpq_class& t) { return t > 0; }) && pair(highest_, x) < 1;
}

bool ApartmentModel::on_wall(const QVec& x) const
{
    for (const auto& root : rs_.positive_roots()) {
        mpq_class v = pair(root, x);
        if (v.get_den() == 1) return true;
    }
    return false;
}

IntVec ApartmentModel::lambda_sum(NablaSet q) const
{
    IntVec v(rank(), 0);
    for (int k = 0; k < rank(); ++k)
        if ((q >> k) & 1) v[k] = 1;
    return v;
}

mpq_class ApartmentModel::max_shift_norm2() const
{
    mpq_class best = 0;
    for (NablaSet q = 1; q < (NablaSet{1} << rank()); ++q) {
        auto lam = members_of(q, rank());
        for_each_tuple(rs_.weyl_order(), static_cast<int>(lam.size()), [&](const std::vector<std::size_t>& t) {
            IntVec s(rank(), 0);
            for (std::size_t a = 0; a < lam.size(); ++a) {
                IntVec e(rank(), 0);
                e[lam[a]] = 1;
                s = add(s, act(t[a], e));
            }
            best = std::max(best, norm2(to_q(s)));
        });
    }
    return best;
}

std::vector<IntVec> ApartmentModel::lattice_ball(const QVec& center, const mpq_class& r2) const
{
    // |x_i| = |<alpha_i, x>| <= ||alpha_i|| ||x|| with ||alpha_i||^2 = (G^-1)_ii
    auto ginv = inverse_q(gram_);
    const int r = rank();
    std::vector<int> lo(r), hi(r);
    for (int i = 0; i < r; ++i) {
        double b = std::sqrt(r2.get_d() * ginv[i][i].get_d()) + 1.0;
        lo[i] = static_cast<int>(std::floor(center[i].get_d() - b));
        hi[i] = static_cast<int>(std::ceil(center[i].get_d() + b));
    }
    std::vector<IntVec> out;
    IntVec z(lo);
    while (true) {
        if (dist2(to_q(z), center) <= r2) out.push_back(z);
        int k = 0;
        while (k < r && ++z[k] > hi[k]) z[k] = lo[k], ++k;
        if (k == r) break;
    }
    return out;
}

mpq_class guarded_radius(const ApartmentModel& m, const mpq_class& window_radius)
{
    double s = std::sqrt(m.max_shift_norm2().get_d());
    return window_radius + static_cast<long>(std::ceil(s));
}

bool distances_distinct(const ApartmentModel& m, const QVec& z0, const mpq_class& radius)
{
    std::vector<mpq_class> d;
    for (const auto& z : m.lattice_ball(z0, radius * radius)) d.push_back(m.dist2(to_q(z), z0));
    std::sort(d.begin(), d.end());
    return std::adjacent_find(d.begin(), d.end()) == d.end();
}

Basepoint generic_basepoint(const ApartmentModel& m, const mpq_class& window_radius, long max_denominator)
{
    const int r = m.rank();
    const mpq_class guard = guarded_radius(m, window_radius);
    Basepoint bp;
    for (long den = 2; den <= max_denominator; ++den) {
        std::vector<long> num(r, 1);
        while (true) {
            QVec z(r);
            for (int i = 0; i < r; ++i) z[i] = mpq_class(num[i], den);
            for (auto& x : z) x.canonicalize();
            if (m.in_base_alcove(z)) {
                ++bp.candidates_tried;
                if (!m.on_wall(z) && distances_distinct(m, z, guard)) {
                    bp.z0 = z;
                    bp.denominator = den;
                    bp.vertices_checked = m.lattice_ball(z, guard * guard).size();
                    return bp;
                }
            }
            int k = 0;
            while (k < r && ++num[k] >= den) num[k++] = 1;
            if (k == r) break;
        }
    }
    throw StructuralError("generic_basepoint: denominator budget exhausted");
}

bool verify_extremal_sum(const ApartmentModel& m, const QVec& z, NablaSet q)
{
    if (!m.in_open_anticone(z)) throw std::invalid_argument("verify_extremal_sum: z is not in -C");
    auto lam = members_of(q, m.rank());
    const QVec target = to_q(m.lambda_sum(q));
    mpq_class best = -1;
    std::vector<std::pair<mpq_class, bool>> seen;
    for_each_tuple(m.roots().weyl_order(), static_cast<int>(lam.size()), [&](const std::vector<std::size_t>& t) {
        IntVec s(m.rank(), 0);
        for (std::size_t a = 0; a < lam.size(); ++a) {
            IntVec e(m.rank(), 0);
            e[lam[a]] = 1;
            s = add(s, m.act(t[a], e));
        }
        QVec sq = to_q(s);
        mpq_class d = m.dist2(z, sq);
        seen.push_back({d, sq == target});
        best = std::max(best, d);
    });
    for (auto& [d, hits_target] : seen)
        if ((d == best) != hits_target) return false;
    return true;
}

std::size_t chamber_index(const ApartmentModel& m, const QVec& z0, const IntVec& z)
{
    QVec diff(m.rank());
    for (int i = 0; i < m.rank(); ++i) diff[i] = z0[i] - z[i];
    std::size_t found = 0, count = 0;
    for (std::size_t w = 0; w < m.roots().weyl_order(); ++w)
        if (m.in_closed_cone(m.act(m.roots().inverse(w), diff))) {
            found = w;
            ++count;
        }
    if (count != 1) throw StructuralError("chamber_index: z0 - z lies on a wall");
    return found;
}

EpsilonValue epsilon_of(const ApartmentModel& m, const QVec& z0, const IntVec& z, NablaSet q)
{
    auto lam = members_of(q, m.rank());
    const std::size_t wz = chamber_index(m, z0, z);
    EpsilonValue ev;
    ev.eps2 = -1;
    std::vector<std::pair<mpq_class, bool>> seen;
    for_each_tuple(m.roots().weyl_order(), static_cast<int>(lam.size()), [&](const std::vector<std::size_t>& t) {
        IntVec x = z;
        bool predicted = true;
        for (std::size_t a = 0; a < lam.size(); ++a) {
            IntVec e(m.rank(), 0);
            e[lam[a]] = 1;
            IntVec we = m.act(t[a], e);
            predicted &= we == m.act(wz, e);
            x = add(x, we, -1);
        }
        mpq_class d = m.dist2(to_q(x), z0);
        seen.push_back({d, predicted});
        if (d > ev.eps2) {
            ev.eps2 = d;
            ev.argmax = x;
        }
    });
    ev.maximizers_as_predicted = true;
    for (auto& [d, predicted] : seen)
        if ((d == ev.eps2) != predicted) ev.maximizers_as_predicted = false;
    return ev;
}

Block block_of(const ApartmentModel& m, const QVec& z0, const IntVec& z_eps)
{
    Block b;
    b.z_eps = z_eps;
    b.eps2 = m.dist2(to_q(z_eps), z0);
    b.w = chamber_index(m, z0, z_eps);
    QVec diff(m.rank());
    for (int i = 0; i < m.rank(); ++i) diff[i] = z0[i] - z_eps[i];
    QVec base = m.act(m.roots().inverse(b.w), diff);
    for (int k = 0; k < m.rank(); ++k) {
        QVec v = base;
        v[k] -= 1;
        if (m.in_closed_cone(v)) b.q_eps |= NablaSet{1} << k;
    }
    for (NablaSet q = 0; q < (NablaSet{1} << m.rank()); ++q) {
        if ((q & b.q_eps) != q) continue;
        b.members.push_back({add(z_eps, m.act(b.w, m.lambda_sum(q))), q});
    }
    return b;
}

bool PartitionReport::passed() const
{
    return window_pairs > 0 && value_mismatches == 0 && cover_violations == 0 && margin_violations == 0 &&
           maximizer_violations == 0 && monotonicity_violations == 0 && chamber_violations == 0;
}

PartitionReport partition_check(const ApartmentModel& m, const QVec& z0, const mpq_class& radius)
{
    PartitionReport rep;
    rep.radius = radius;
    const mpq_class big = guarded_radius(m, radius);
    const auto ball = m.lattice_ball(z0, big * big);
    std::set<IntVec> in_ball(ball.begin(), ball.end());
    std::map<std::pair<IntVec, NablaSet>, std::size_t> hits;
    for (const auto& v : ball) {
        Block b;
        try {
            b = block_of(m, z0, v);
        } catch (const StructuralError&) {
            ++rep.chamber_violations;
            continue;
        }
        ++rep.blocks;
        std::set<IntVec> distinct;
        for (const auto& [z, q] : b.members) {
            ++hits[{z, q}];
            distinct.insert(z);
            if (epsilon_of(m, z0, z, q).eps2 != b.eps2) ++rep.value_mismatches;
        }
        if (distinct.size() != b.members.size()) ++rep.value_mismatches;
        if (m.dist2(to_q(v), z0) <= radius * radius) ++rep.block_sizes[b.members.size()];
    }
    const NablaSet full = (NablaSet{1} << m.rank()) - 1;
    for (const auto& z : ball) {
        if (m.dist2(to_q(z), z0) > radius * radius) continue;
        std::vector<mpq_class> eps(full + 1);
        for (NablaSet q = 0; q <= full; ++q) {
            ++rep.window_pairs;
            EpsilonValue ev = epsilon_of(m, z0, z, q);
            eps[q] = ev.eps2;
            if (!ev.maximizers_as_predicted) ++rep.maximizer_violations;
            if (!in_ball.count(ev.argmax)) ++rep.margin_violations;
            auto it = hits.find({z, q});
            if (it == hits.end() || it->second != 1) ++rep.cover_violations;
        }
        for (NablaSet q = 0; q <= full; ++q)
            for (NablaSet s = 0; s <= full; ++s)
                if ((s & q) == s && eps[s] > eps[q]) ++rep.monotonicity_violations;
    }
    return rep;
}

BijectionReport graded_support_bijection(const ApartmentModel& m, const QVec& z0, const IntVec& z_eps)
{
    BijectionReport rep;
    rep.block = block_of(m, z0, z_eps);
    const Block& b = rep.block;
    const NablaSet d = b.q_eps;
    const IntVec y = b.members.back().first;  // Q = Q(eps)
    const std::size_t winv = m.roots().inverse(b.w);
    rep.well_defined = true;
    std::map<IntVec, NablaSet> by_z;
    std::set<IntVec> images;
    for (const auto& [z, q] : b.members) {
        BijectionRow row{z, q, m.act(winv, add(z, y, -1))};
        IntVec expect(m.rank(), 0);
        expect = add(expect, m.lambda_sum(d & ~q), -1);
        if (row.image != expect) rep.well_defined = false;
        auto [it, fresh] = by_z.emplace(z, q);
        if (!fresh && it->second != q) rep.well_defined = false;
        images.insert(row.image);
        rep.rows.push_back(row);
    }
    std::set<IntVec> targets;
    for (NablaSet e = 0; e <= d; ++e)
        if ((e & d) == e) targets.insert(add(IntVec(m.rank(), 0), m.lambda_sum(e), -1));
    rep.bijective = images == targets && images.size() == b.members.size();

    rep.wall_separation = true;
    for (const auto& [z1, q1] : b.members)
        for (const auto& [z2, q2] : b.members) {
            if ((q1 & q2) != q1 || q1 == q2) continue;
            for (const auto& root : m.roots().positive_roots()) {
                mpq_class k = m.pair(root, to_q(z2));
                mpq_class at1 = m.pair(root, to_q(z1)) - k;
                if (at1 == 0) continue;
                ++rep.wall_checks;
                if (sign_of(at1) == sign_of(m.pair(root, z0) - k)) rep.wall_separation = false;
            }
        }
    return rep;
}

std::string window_svg(const ApartmentModel& m, const QVec& z0, const mpq_class& radius, const Block& highlight)
{
    if (m.rank() != 2) throw std::invalid_argument("window_svg: rank 2 only");
    const auto& g = m.gram();
    const double g11 = g[0][0].get_d(), g12 = g[0][1].get_d(), g22 = g[1][1].get_d();
    const double b1x = std::sqrt(g11), b2x = g12 / b1x, b2y = std::sqrt(g22 - b2x * b2x);
    const double scale = 40.0, R = radius.get_d() + 1.0;
    auto px = [&](double x1, double x2) {
        return std::pair<double, double>{scale * (x1 * b1x + x2 * b2x), -scale * (x2 * b2y)};
    };
    const double c0x = px(z0[0].get_d(), z0[1].get_d()).first, c0y = px(z0[0].get_d(), z0[1].get_d()).second;
    const double half = scale * (R + 1);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << c0x - half << ' ' << c0y - half << ' '
       << 2 * half << ' ' << 2 * half << "\">\n";
    // walls <alpha, x> = k, drawn as long segments
    const int reach = static_cast<int>(std::ceil(3 * R));
    for (const auto& root : m.roots().positive_roots()) {
        for (int k = -reach; k <= reach; ++k) {
            double n1 = root[0], n2 = root[1];
            std::pair<double, double> a, b;
            if (n2 != 0) {
                a = px(-reach, (k + n1 * reach) / n2);
                b = px(reach, (k - n1 * reach) / n2);
            } else {
                a = px(k / n1, -reach);
                b = px(k / n1, reach);
            }
            os << "<line x1=\"" << a.first << "\" y1=\"" << a.second << "\" x2=\"" << b.first << "\" y2=\"" << b.second
               << "\" stroke=\"#bbb\" stroke-width=\"0.6\"/>\n";
        }
    }
    const auto& h = m.highest_root();
    auto v0 = px(0, 0), v1 = px(1.0 / h[0], 0), v2 = px(0, 1.0 / h[1]);
    os << "<polygon points=\"" << v0.first << ',' << v0.second << ' ' << v1.first << ',' << v1.second << ' ' << v2.first
       << ',' << v2.second << "\" fill=\"#cde\"/>\n";
    for (const auto& z : m.lattice_ball(z0, radius * radius)) {
        auto p = px(z[0], z[1]);
        os << "<circle cx=\"" << p.first << "\" cy=\"" << p.second << "\" r=\"2\" fill=\"#333\"/>\n";
    }
    for (const auto& [z, q] : highlight.members) {
        auto p = px(z[0], z[1]);
        os << "<circle cx=\"" << p.first << "\" cy=\"" << p.second << "\" r=\"5\" fill=\"none\" stroke=\"#c22\"/>\n";
    }
    os << "<circle cx=\"" << c0x << "\" cy=\"" << c0y << "\" r=\"3\" fill=\"#c22\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace hk
