#include "doctest.h"
#include "hk/exactla.hpp"
#include "hk/rootdata.hpp"

#include <random>
#include <sstream>

using namespace hk;

namespace {

Matrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::mt19937_64& rng, int density = 100)
{
    Matrix m(p, r, c);
    std::uniform_int_distribution<int> pct(0, 99), val(-3, 3);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (pct(rng) < density) m.set(i, j, p ? static_cast<i64>(rng() % p) : val(rng));
    return m;
}

Matrix random_invertible(std::uint32_t p, std::size_t n, std::mt19937_64& rng)
{
    while (true) {
        Matrix m = random_matrix(p, n, n, rng);
        if (rank(m) == n) return m;
    }
}

}  // namespace

TEST_CASE("trivial ranks")
{
    CHECK(rank(Matrix::identity(3, 2)) == 2);
    CHECK(rank(Matrix(5, 5, 7)) == 0);
    CHECK(rank(Matrix(0, 5, 7)) == 0);
    CHECK(rank(Matrix::identity(0, 4)) == 4);
}

TEST_CASE("rank is transpose invariant")
{
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {0u, 2u, 3u, 5u})
        for (int trial = 0; trial < 20; ++trial) {
            Matrix m = random_matrix(p, 1 + rng() % 12, 1 + rng() % 12, rng, 40);
            CHECK(rank(m) == rank(m.transpose()));
        }
}

TEST_CASE("bitset and generic elimination agree over F_2")
{
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 17u, 64u, 65u, 200u, 512u}) {
        for (int density : {5, 50}) {
            Matrix m = random_matrix(2, n, n, rng, density);
            CHECK(rank_f2_bitset(m) == rank_dense_fp(m));
            // force rank deficiency
            Matrix low = random_matrix(2, n, n / 2 + 1, rng, density) * random_matrix(2, n / 2 + 1, n, rng, density);
            CHECK(rank_f2_bitset(low) == rank_dense_fp(low));
        }
    }
}

TEST_CASE("rational rank agrees with reduction mod a large prime on small integer matrices")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t k = 1 + rng() % 6;
        Matrix a = random_matrix(0, 8, k, rng), b = random_matrix(0, k, 9, rng);
        Matrix m = a * b;
        Matrix mp(1000003, m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) mp.set(i, j, m.at(i, j));
        CHECK(rank_bareiss(m) == rank_dense_fp(mp));
        CHECK(rank_bareiss(m) <= k);
    }
}

TEST_CASE("solve")
{
    std::vector<i64> b = {1, 2, 0};
    auto x = solve_fp(Matrix::identity(3, 3), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve_fp(Matrix(3, 3, 3), b));
    CHECK_THROWS(solve_fp(Matrix::identity(3, 2), b));

    std::mt19937_64 rng(5);
    for (std::uint32_t p : {2u, 3u, 7u})
        for (int trial = 0; trial < 20; ++trial) {
            Matrix m = random_matrix(p, 6, 4, rng, 60);
            std::vector<i64> x0(4);
            for (auto& v : x0) v = rng() % p;
            auto rhs = m.apply(x0);
            auto sol = solve_fp(m, rhs);
            REQUIRE(sol);
            CHECK(m.apply(*sol) == rhs);
        }

    Matrix q(0, 2, 2);
    q.set(0, 0, 2);
    q.set(1, 1, 3);
    auto xq = solve_rational(q, {1, 1});
    REQUIRE(xq);
    CHECK((*xq)[0] == mpq_class(1, 2));
    CHECK((*xq)[1] == mpq_class(1, 3));
    CHECK_FALSE(solve_rational(Matrix(0, 2, 2), {1, 0}));
}

TEST_CASE("null spaces and inverses")
{
    std::mt19937_64 rng(9);
    for (std::uint32_t p : {2u, 5u}) {
        Matrix m = random_matrix(p, 5, 8, rng, 50);
        Matrix k = null_space(m);
        CHECK((m * k).is_zero());
        CHECK(k.cols() == 8 - rank(m));
        Matrix l = left_null_space(m);
        CHECK((l * m).is_zero());
        CHECK(l.rows() == 5 - rank(m));
        Matrix g = random_invertible(p, 6, rng);
        CHECK(g * inverse_fp(g) == Matrix::identity(p, 6));
    }
}

TEST_CASE("streaming solver matches dense solve")
{
    std::mt19937_64 rng(21);
    for (std::uint32_t p : {2u, 3u})
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 3 + rng() % 30, cols = 2 + rng() % 20;
            Matrix m = random_matrix(p, rows, cols, rng, 15);
            std::vector<i64> rhs(rows);
            if (trial % 2) {
                std::vector<i64> x0(cols);
                for (auto& v : x0) v = rng() % p;
                rhs = m.apply(x0);
            } else {
                for (auto& v : rhs) v = rng() % p;
            }
            StreamingSolver s(p, cols);
            for (std::size_t i = 0; i < rows; ++i) {
                std::vector<std::pair<std::size_t, i64>> co;
                for (std::size_t j = 0; j < cols; ++j)
                    if (m.at(i, j)) co.emplace_back(j, m.at(i, j));
                s.add_equation(co, rhs[i]);
            }
            auto dense = solve_fp(m, rhs);
            CHECK(s.consistent() == dense.has_value());
            if (s.consistent()) CHECK(m.apply(s.witness()) == rhs);
            CHECK(s.rank() <= rank(m));
        }
}

TEST_CASE("homology of small complexes")
{
    ChainComplex iso{3, {1, 1}, {Matrix::identity(3, 1)}};
    CHECK(homology_dims(iso) == std::vector<std::size_t>{0, 0});
    ChainComplex point{3, {1}, {}};
    CHECK(homology_dims(point) == std::vector<std::size_t>{1});

    Matrix a(2, 1, 1), b(2, 1, 1);
    a.set(0, 0, 1);
    b.set(0, 0, 1);
    ChainComplex bad{2, {1, 1, 1}, {a, b}};
    CHECK_THROWS_AS(homology_dims(bad), StructuralError);
}

TEST_CASE("homology is invariant under change of basis")
{
    std::mt19937_64 rng(13);
    for (std::uint32_t p : {2u, 3u, 0u}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::uint32_t fp = p ? p : 1000003;
            Matrix d0 = random_matrix(fp, 7, 4, rng, 50);
            Matrix left = left_null_space(d0);
            Matrix d1 = random_matrix(fp, 5, left.rows(), rng, 50) * left;
            ChainComplex c{fp, {4, 7, 5}, {d0, d1}};
            auto h = homology_dims(c);
            Matrix p0 = random_invertible(fp, 4, rng), p1 = random_invertible(fp, 7, rng),
                   p2 = random_invertible(fp, 5, rng);
            ChainComplex c2{fp, {4, 7, 5}, {p1 * d0 * inverse_fp(p0), p2 * d1 * inverse_fp(p1)}};
            CHECK(homology_dims(c2) == h);
            std::size_t euler_dims = 4 + 5 - 7;
            CHECK(h[0] + h[2] - h[1] == euler_dims);
        }
    }
}

TEST_CASE("matrix dump round trip")
{
    std::mt19937_64 rng(1);
    Matrix m = random_matrix(5, 3, 4, rng);
    std::stringstream ss;
    write_matrix(ss, m);
    CHECK(ss.str().rfind("5 3 4\n", 0) == 0);
    CHECK(read_matrix(ss) == m);
}
