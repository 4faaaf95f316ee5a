// Exact linear algebra over F_p and over Q.
//
// A Matrix carries its characteristic; p = 0 means the rationals, in which
// case entries are integers and elimination is fraction free.
#pragma once

#include <cstddef>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace hk {

using i64 = std::int64_t;

i64 mod_reduce(i64 v, std::uint32_t p);
i64 mod_inverse(i64 a, std::uint32_t p);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);
    static Matrix identity(std::uint32_t p, std::size_t n);

    std::uint32_t characteristic() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    i64 at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, i64 v) { a_[r * cols_ + c] = reduce(v); }
    void add(std::size_t r, std::size_t c, i64 v) { set(r, c, at(r, c) + v); }
    const i64* row(std::size_t r) const { return a_.data() + r * cols_; }

    // Adds s * B into the block with top-left corner (r0, c0).
    void add_block(std::size_t r0, std::size_t c0, const Matrix& b, i64 s = 1);
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    bool is_zero() const;
    Matrix transpose() const;
    Matrix power(std::uint64_t e) const;
    std::vector<i64> apply(const std::vector<i64>& v) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    bool operator==(const Matrix& o) const = default;

private:
    i64 reduce(i64 v) const { return p_ == 0 ? v : mod_reduce(v, p_); }

    std::uint32_t p_ = 0;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<i64> a_;
};

std::size_t rank(const Matrix& m);
// Plain modular elimination, also used for p = 2 as a cross-check of the
// bit-packed path.
std::size_t rank_dense_fp(const Matrix& m);
std::size_t rank_f2_bitset(const Matrix& m);
std::size_t rank_bareiss(const Matrix& m);

std::optional<std::vector<i64>> solve_fp(const Matrix& m, const std::vector<i64>& b);
std::optional<std::vector<mpq_class>> solve_rational(const Matrix& m, const std::vector<i64>& b);

// Columns form a basis of the kernel (F_p only).
Matrix null_space(const Matrix& m);
// Rows form a basis of {y : y^T M = 0}.
Matrix left_null_space(const Matrix& m);
// Inverse of a square invertible matrix over F_p.
Matrix inverse_fp(const Matrix& m);
// Indices of a maximal set of linearly independent columns, chosen greedily.
std::vector<std::size_t> independent_columns(const Matrix& m);

// Row-by-row elimination keeping only a pivot table.  Rows are fed once as
// sparse (column, value) lists with a right-hand side; the system is
// consistent until a row reduces to 0 = nonzero.
class StreamingSolver {
public:
    StreamingSolver(std::uint32_t p, std::size_t unknowns);

    bool add_equation(const std::vector<std::pair<std::size_t, i64>>& coeffs, i64 rhs);
    bool consistent() const { return consistent_; }
    std::size_t rank() const { return pivot_count_; }
    std::size_t rows_seen() const { return rows_seen_; }
    std::vector<i64> witness() const;

private:
    bool add_f2(const std::vector<std::pair<std::size_t, i64>>& coeffs, i64 rhs);
    bool add_fp(const std::vector<std::pair<std::size_t, i64>>& coeffs, i64 rhs);

    std::uint32_t p_;
    std::size_t n_, words_;
    bool consistent_ = true;
    std::size_t pivot_count_ = 0, rows_seen_ = 0;
    std::vector<std::vector<std::uint64_t>> bits_;  // p = 2; bit n is the rhs
    std::vector<std::vector<i64>> dense_;           // p > 2; entry n is the rhs
};

struct ChainComplex {
    std::uint32_t p = 0;
    std::vector<std::size_t> dims;  // C^0 .. C^n
    std::vector<Matrix> d;          // d[j] : C^j -> C^{j+1}

    // Throws StructuralError if shapes disagree or d[j+1] d[j] != 0.
    void verify() const;
};

std::vector<std::size_t> homology_dims(const ChainComplex& c);

void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

}  // namespace hk
