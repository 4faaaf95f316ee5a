#include "hk/unipotent.hpp"

#include <stdexcept>

namespace hk {

i64 int_pow(i64 base, int e)
{
    i64 r = 1;
    while (e-- > 0) r *= base;
    return r;
}

UnipotentElt::UnipotentElt(int n, i64 modulus) : n_(n), modulus_(modulus), a_(n * n, 0)
{
    for (int i = 0; i < n; ++i) a_[i * n + i] = 1;
}

UnipotentElt UnipotentElt::elementary(int n, i64 modulus, int i, int j, i64 t)
{
    if (i <= j) throw std::invalid_argument("elementary: need i > j");
    UnipotentElt u(n, modulus);
    u.set(i, j, t);
    return u;
}

void UnipotentElt::set(int i, int j, i64 v)
{
    if (i <= j) throw std::invalid_argument("UnipotentElt::set: only below-diagonal entries");
    i64 r = v % modulus_;
    a_[i * n_ + j] = r < 0 ? r + modulus_ : r;
}

UnipotentElt UnipotentElt::operator*(const UnipotentElt& o) const
{
    if (n_ != o.n_ || modulus_ != o.modulus_) throw std::invalid_argument("UnipotentElt: mismatched product");
    UnipotentElt c(n_, modulus_);
    for (int i = 1; i < n_; ++i)
        for (int j = 0; j < i; ++j) {
            i64 s = 0;
            for (int k = j; k <= i; ++k) s = (s + at(i, k) * o.at(k, j)) % modulus_;
            c.a_[i * n_ + j] = s;
        }
    return c;
}

UnipotentElt UnipotentElt::inverse() const
{
    // Forward substitution for X with this * X = 1.
    UnipotentElt x(n_, modulus_);
    for (int j = 0; j < n_; ++j)
        for (int i = j + 1; i < n_; ++i) {
            i64 s = 0;
            for (int k = j; k < i; ++k) s = (s + at(i, k) * x.at(k, j)) % modulus_;
            x.set(i, j, -s);
        }
    return x;
}

UnipotentElt UnipotentElt::reduced(i64 new_modulus) const
{
    if (modulus_ % new_modulus != 0) throw std::invalid_argument("reduced: modulus does not divide");
    UnipotentElt r(n_, new_modulus);
    for (int i = 1; i < n_; ++i)
        for (int j = 0; j < i; ++j) r.set(i, j, at(i, j));
    return r;
}

bool UnipotentElt::is_identity() const
{
    for (int i = 1; i < n_; ++i)
        for (int j = 0; j < i; ++j)
            if (at(i, j) != 0) return false;
    return true;
}

std::vector<i64> UnipotentElt::lower_entries() const
{
    std::vector<i64> out;
    for (int i = 1; i < n_; ++i)
        for (int j = 0; j < i; ++j) out.push_back(at(i, j));
    return out;
}

std::vector<std::pair<int, int>> lower_positions(int n)
{
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) out.emplace_back(i, j);
    return out;
}

IntMat exponent_matrix(Subset e, int n)
{
    if (n < 2 || e >> (n - 1)) throw std::invalid_argument("exponent_matrix: subset out of range");
    // c_i = number of k in E with i <= k (0-based), the p-adic valuation of the lift.
    IntVec c(n, 0);
    for (int k = 0; k < n - 1; ++k)
        if (contains(e, k))
            for (int i = 0; i <= k; ++i) ++c[i];
    IntMat m(n, IntVec(n, 0));
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            m[i][j] = c[j] - c[i];
            if (m[i][j] < 0) throw std::logic_error("exponent_matrix: non-dominant lift");
        }
    return m;
}

int exponent_sum(Subset e, int n)
{
    auto m = exponent_matrix(e, n);
    int s = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) s += m[i][j];
    return s;
}

int required_precision(int n)
{
    auto m = exponent_matrix((Subset{1} << (n - 1)) - 1, n);
    int mx = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) mx = std::max(mx, m[i][j]);
    return mx + 1;
}

UnipotentElt canonical_coset_rep(const UnipotentElt& u, const IntMat& m, i64 p)
{
    const int n = u.n();
    UnipotentElt v = u;
    for (int h = 1; h < n; ++h)
        for (int j = 0; j + h < n; ++j) {
            const int i = j + h;
            const i64 q = int_pow(p, m[i][j]);
            if (u.modulus() % q != 0) throw std::invalid_argument("canonical_coset_rep: insufficient precision");
            const i64 t = v.at(i, j) % q - v.at(i, j);
            if (t == 0) continue;
            // Right multiplication by e_ij(t): column j += t * column i.
            for (int k = i; k < n; ++k) {
                i64 cik = k == i ? 1 : v.at(k, i);
                v.set(k, j, v.at(k, j) + t * cik);
            }
        }
    return v;
}

CosetTable::CosetTable(int n, i64 p, Subset e, int precision)
    : n_(n), p_(p), e_(e), precision_(precision), modulus_(int_pow(p, precision)),
      m_(exponent_matrix(e, n)), positions_(lower_positions(n))
{
    for (auto [i, j] : positions_)
        if (m_[i][j] + 1 > precision)
            throw std::invalid_argument("CosetTable: precision too small for subset");
    radix_.resize(positions_.size());
    std::size_t total = 1;
    for (std::size_t k = positions_.size(); k-- > 0;) {
        radix_[k] = static_cast<i64>(total);
        total *= static_cast<std::size_t>(int_pow(p, m_[positions_[k].first][positions_[k].second]));
    }
    reps_.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        UnipotentElt u(n, modulus_);
        std::size_t rest = idx;
        for (std::size_t k = 0; k < positions_.size(); ++k) {
            auto [i, j] = positions_[k];
            u.set(i, j, static_cast<i64>(rest / radix_[k]));
            rest %= radix_[k];
        }
        reps_.push_back(std::move(u));
    }
}

UnipotentElt CosetTable::canonical(const UnipotentElt& u) const { return canonical_coset_rep(u, m_, p_); }

std::size_t CosetTable::index_of(const UnipotentElt& u) const
{
    std::size_t idx = 0;
    for (std::size_t k = 0; k < positions_.size(); ++k) {
        auto [i, j] = positions_[k];
        const i64 bound = int_pow(p_, m_[i][j]);
        if (u.at(i, j) >= bound) throw std::invalid_argument("CosetTable::index_of: not canonical");
        idx += static_cast<std::size_t>(u.at(i, j) * radix_[k]);
    }
    return idx;
}

bool CosetTable::is_member(const UnipotentElt& u) const
{
    for (auto [i, j] : positions_)
        if (u.at(i, j) % int_pow(p_, m_[i][j]) != 0) return false;
    return true;
}

UnipotentElt CosetTable::conjugate_mod_p(const UnipotentElt& x) const
{
    UnipotentElt g(n_, p_);
    for (auto [i, j] : positions_) {
        const i64 q = int_pow(p_, m_[i][j]);
        if (x.at(i, j) % q != 0) throw std::logic_error("conjugate_mod_p: element not in N[E]");
        g.set(i, j, x.at(i, j) / q);
    }
    return g;
}

CosetTable::Action CosetTable::act(const UnipotentElt& u, std::size_t rep_index) const
{
    const UnipotentElt& r = reps_.at(rep_index);
    UnipotentElt prod = u * r;
    UnipotentElt target = canonical(prod);
    UnipotentElt i2 = target.inverse() * prod;
    return Action{index_of(target), i2, conjugate_mod_p(i2.inverse())};
}

}  // namespace hk
