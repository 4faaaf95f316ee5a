#include "hk/exactla.hpp"

#include "hk/rootdata.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace hk {

i64 mod_reduce(i64 v, std::uint32_t p)
{
    i64 r = v % static_cast<i64>(p);
    return r < 0 ? r + p : r;
}

i64 mod_inverse(i64 a, std::uint32_t p)
{
    i64 t = 0, nt = 1, r = p, nr = mod_reduce(a, p);
    if (nr == 0) throw std::domain_error("mod_inverse of zero");
    while (nr != 0) {
        i64 q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return mod_reduce(t, p);
}

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0)
{
}

Matrix Matrix::identity(std::uint32_t p, std::size_t n)
{
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b, i64 s)
{
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw std::out_of_range("add_block: block exceeds matrix");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j)
            if (b.at(i, j) != 0) add(r0 + i, c0 + j, s * b.at(i, j));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    Matrix out(p_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out.a_[i * nc + j] = at(r0 + i, c0 + j);
    return out;
}

bool Matrix::is_zero() const
{
    for (i64 v : a_)
        if (v != 0) return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.a_[j * rows_ + i] = at(i, j);
    return t;
}

Matrix Matrix::power(std::uint64_t e) const
{
    Matrix result = identity(p_, rows_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::vector<i64> Matrix::apply(const std::vector<i64>& v) const
{
    Matrix col(p_, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) col.set(i, 0, v[i]);
    Matrix out = *this * col;
    return out.a_;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_ || a.p_ != b.p_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.p_, a.rows_, b.cols_);
    std::vector<__int128> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            i64 x = a.at(i, k);
            if (x == 0) continue;
            const i64* br = b.row(k);
            for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += static_cast<__int128>(x) * br[j];
        }
        for (std::size_t j = 0; j < b.cols_; ++j) {
            __int128 v = acc[j];
            if (a.p_ != 0) v %= a.p_;
            if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("matrix product overflow");
            c.set(i, j, static_cast<i64>(v));
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
        throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = c.reduce(a.a_[i] + b.a_[i]);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = c.reduce(a.a_[i] - b.a_[i]);
    return c;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref_fp(std::vector<std::vector<i64>>& m, std::size_t ncols, std::uint32_t p)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        i64 inv = mod_inverse(m[r][c], p);
        for (std::size_t j = c; j < m[r].size(); ++j) m[r][j] = m[r][j] * inv % p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            i64 f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j)
                if (m[r][j] != 0) m[i][j] = mod_reduce(m[i][j] - f * m[r][j], p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<i64>> to_rows(const Matrix& m)
{
    std::vector<std::vector<i64>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i].assign(m.row(i), m.row(i) + m.cols());
    return rows;
}

void require_fp(const Matrix& m, const char* what)
{
    if (m.characteristic() == 0) throw std::invalid_argument(std::string(what) + ": F_p only");
}

}  // namespace

std::size_t rank_dense_fp(const Matrix& m)
{
    require_fp(m, "rank_dense_fp");
    const std::uint32_t p = m.characteristic();
    auto rows = to_rows(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        i64 inv = mod_inverse(rows[r][c], p);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            i64 f = rows[i][c] * inv % p;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (rows[r][j] != 0) rows[i][j] = mod_reduce(rows[i][j] - f * rows[r][j], p);
        }
        ++r;
    }
    return r;
}

std::size_t rank_f2_bitset(const Matrix& m)
{
    if (m.characteristic() != 2) throw std::invalid_argument("rank_f2_bitset: p must be 2");
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j)) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t piv = r;
        while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i)
            if (rows[i][w] & bit)
                for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[r][k];
        ++r;
    }
    return r;
}

std::size_t rank_bareiss(const Matrix& m)
{
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<long>(m.at(i, j));
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j) {
                a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

std::size_t rank(const Matrix& m)
{
    if (m.characteristic() == 0) return rank_bareiss(m);
    if (m.characteristic() == 2) return rank_f2_bitset(m);
    return rank_dense_fp(m);
}

std::optional<std::vector<i64>> solve_fp(const Matrix& m, const std::vector<i64>& b)
{
    require_fp(m, "solve_fp");
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    const std::uint32_t p = m.characteristic();
    auto rows = to_rows(m);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(mod_reduce(b[i], p));
    auto pivots = rref_fp(rows, m.cols() + 1, p);
    std::vector<i64> x(m.cols(), 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == m.cols()) return std::nullopt;
        x[pivots[k]] = rows[k][m.cols()];
    }
    return x;
}

std::optional<std::vector<mpq_class>> solve_rational(const Matrix& m, const std::vector<i64>& b)
{
    if (m.characteristic() != 0) throw std::invalid_argument("solve_rational: p must be 0");
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = m.cols();
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m.at(i, j));
        a[i][n] = static_cast<long>(b[i]);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c <= n && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        mpq_class inv = 1 / a[r][c];
        for (std::size_t j = c; j <= n; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<mpq_class> x(n, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == n) return std::nullopt;
        x[pivots[k]] = a[k][n];
    }
    return x;
}

Matrix null_space(const Matrix& m)
{
    require_fp(m, "null_space");
    const std::uint32_t p = m.characteristic();
    auto rows = to_rows(m);
    auto pivots = rref_fp(rows, m.cols(), p);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix basis(p, m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis.set(free[k], k, 1);
        for (std::size_t i = 0; i < pivots.size(); ++i) basis.set(pivots[i], k, -rows[i][free[k]]);
    }
    return basis;
}

Matrix left_null_space(const Matrix& m) { return null_space(m.transpose()).transpose(); }

Matrix inverse_fp(const Matrix& m)
{
    require_fp(m, "inverse_fp");
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse_fp: not square");
    const std::size_t n = m.rows();
    const std::uint32_t p = m.characteristic();
    auto rows = to_rows(m);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].resize(2 * n, 0);
        rows[i][n + i] = 1;
    }
    auto pivots = rref_fp(rows, n, p);
    if (pivots.size() != n) throw StructuralError("inverse_fp: singular matrix");
    Matrix inv(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.set(i, j, rows[i][n + j]);
    return inv;
}

std::vector<std::size_t> independent_columns(const Matrix& m)
{
    require_fp(m, "independent_columns");
    auto rows = to_rows(m);
    return rref_fp(rows, m.cols(), m.characteristic());
}

StreamingSolver::StreamingSolver(std::uint32_t p, std::size_t unknowns)
    : p_(p), n_(unknowns), words_((unknowns + 1 + 63) / 64)
{
    if (p == 0) throw std::invalid_argument("StreamingSolver: F_p only");
    if (p == 2)
        bits_.resize(unknowns + 1);
    else
        dense_.resize(unknowns + 1);
}

bool StreamingSolver::add_equation(const std::vector<std::pair<std::size_t, i64>>& coeffs, i64 rhs)
{
    ++rows_seen_;
    for (auto& [c, v] : coeffs)
        if (c >= n_) throw std::out_of_range("StreamingSolver: column out of range");
    bool ok = p_ == 2 ? add_f2(coeffs, rhs) : add_fp(coeffs, rhs);
    if (!ok) consistent_ = false;
    return consistent_;
}

bool StreamingSolver::add_f2(const std::vector<std::pair<std::size_t, i64>>& coeffs, i64 rhs)
{
    std::vector<std::uint64_t> row(words_, 0);
    for (auto& [c, v] : coeffs)
        if (mod_reduce(v, 2)) row[c / 64] ^= std::uint64_t{1} << (c % 64);
    if (mod_reduce(rhs, 2)) row[n_ / 64] ^= std::uint64_t{1} << (n_ % 64);
    for (std::size_t w = 0; w < words_; ++w) {
        while (row[w]) {
            std::size_t c = w * 64 + __builtin_ctzll(row[w]);
            if (c == n_) return false;
            auto& piv = bits_[c];
            if (piv.empty()) {
                piv = std::move(row);
                ++pivot_count_;
                return true;
            }
            for (std::size_t k = w; k < words_; ++k) row[k] ^= piv[k];
        }
    }
    return true;
}

bool StreamingSolver::add_fp(const std::vector<std::pair<std::size_t, i64>>& coeffs, i64 rhs)
{
    std::vector<i64> row(n_ + 1, 0);
    for (auto& [c, v] : coeffs) row[c] = mod_reduce(row[c] + v, p_);
    row[n_] = mod_reduce(rhs, p_);
    for (std::size_t c = 0; c <= n_; ++c) {
        if (row[c] == 0) continue;
        if (c == n_) return false;
        auto& piv = dense_[c];
        if (piv.empty()) {
            i64 inv = mod_inverse(row[c], p_);
            for (std::size_t j = c; j <= n_; ++j) row[j] = row[j] * inv % p_;
            piv = std::move(row);
            ++pivot_count_;
            return true;
        }
        i64 f = row[c];
        for (std::size_t j = c; j <= n_; ++j)
            if (piv[j]) row[j] = mod_reduce(row[j] - f * piv[j], p_);
    }
    return true;
}

std::vector<i64> StreamingSolver::witness() const
{
    if (!consistent_) throw std::logic_error("StreamingSolver: inconsistent system has no witness");
    std::vector<i64> x(n_, 0);
    for (std::size_t c = n_; c-- > 0;) {
        if (p_ == 2) {
            const auto& piv = bits_[c];
            if (piv.empty()) continue;
            bool v = (piv[n_ / 64] >> (n_ % 64)) & 1;
            for (std::size_t j = c + 1; j < n_; ++j)
                if (((piv[j / 64] >> (j % 64)) & 1) && x[j]) v = !v;
            x[c] = v;
        } else {
            const auto& piv = dense_[c];
            if (piv.empty()) continue;
            i64 v = piv[n_];
            for (std::size_t j = c + 1; j < n_; ++j)
                if (piv[j]) v = mod_reduce(v - piv[j] * x[j], p_);
            x[c] = v;
        }
    }
    return x;
}

void ChainComplex::verify() const
{
    if (d.size() + 1 != dims.size()) throw StructuralError("chain complex: wrong number of differentials");
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j].cols() != dims[j] || d[j].rows() != dims[j + 1])
            throw StructuralError("chain complex: differential " + std::to_string(j) + " has wrong shape");
        if (d[j].characteristic() != p) throw StructuralError("chain complex: characteristic mismatch");
    }
    for (std::size_t j = 0; j + 1 < d.size(); ++j)
        if (!(d[j + 1] * d[j]).is_zero())
            throw StructuralError("chain complex: d" + std::to_string(j + 1) + " d" + std::to_string(j) + " != 0");
}

std::vector<std::size_t> homology_dims(const ChainComplex& c)
{
    c.verify();
    std::vector<std::size_t> ranks;
    for (const auto& m : c.d) ranks.push_back(rank(m));
    std::vector<std::size_t> h(c.dims.size());
    for (std::size_t j = 0; j < c.dims.size(); ++j) {
        std::size_t out = j < ranks.size() ? ranks[j] : 0;
        std::size_t in = j > 0 ? ranks[j - 1] : 0;
        h[j] = c.dims[j] - out - in;
    }
    return h;
}

void write_matrix(std::ostream& os, const Matrix& m)
{
    os << m.characteristic() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j);
        os << '\n';
    }
}

Matrix read_matrix(std::istream& is)
{
    std::uint32_t p;
    std::size_t r, c;
    if (!(is >> p >> r >> c)) throw std::runtime_error("read_matrix: bad header");
    Matrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            i64 v;
            if (!(is >> v)) throw std::runtime_error("read_matrix: truncated data");
            m.set(i, j, v);
        }
    return m;
}

}  // namespace hk
