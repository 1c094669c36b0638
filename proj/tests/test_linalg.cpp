#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hypalg/linalg.hpp"

using namespace hypalg;

TEST_CASE("rational echelon: rank and nullspace")
{
    QMat m = {{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(0), Rat(1), Rat(1)}};
    REQUIRE(q_rank(m) == 2);

    auto ns = q_nullspace(m, 3);
    REQUIRE(ns.size() == 1);
    for (const auto& row : m)
        REQUIRE(qvec_dot(row, ns[0]) == 0);
}

TEST_CASE("rational solve: consistent and inconsistent systems")
{
    QMat m = {{Rat(2), Rat(0)}, {Rat(0), Rat(3)}};
    auto x = q_solve(m, {Rat(4), Rat(9)});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == 2);
    REQUIRE((*x)[1] == 3);

    QMat s = {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    REQUIRE_FALSE(q_solve(s, {Rat(1), Rat(3)}).has_value());
    auto y = q_solve(s, {Rat(1), Rat(2)});
    REQUIRE(y.has_value());
    REQUIRE((*y)[0] + (*y)[1] == 1);
}

TEST_CASE("primitive_vector clears denominators and common factors")
{
    QVec v = {Rat(2, 3), Rat(-4, 3), Rat(2)};
    REQUIRE(primitive_vector(v) == IVec{1, -2, 3});
    REQUIRE_THROWS_AS(primitive_vector(QVec{Rat(0), Rat(0)}), std::invalid_argument);
}

TEST_CASE("integer kernel of a full-rank square matrix is empty")
{
    std::vector<IVec> a = {{2, 1}, {1, 1}};
    REQUIRE(integer_kernel(a).empty());
}

TEST_CASE("integer kernel spans the full kernel lattice (randomized)")
{
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<Int> entry(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        size_t rows = 1 + rng() % 3, cols = rows + rng() % 4;
        std::vector<IVec> a(rows, IVec(cols));
        for (auto& r : a)
            for (auto& x : r)
                x = entry(rng);

        auto basis = integer_kernel(a);
        // Rank identity: #basis + rank(A) == #columns.
        QMat qm;
        for (auto& r : a)
            qm.push_back(to_qvec(r));
        REQUIRE(basis.size() + q_rank(qm) == cols);
        // Every basis vector lies in the kernel.
        for (const auto& v : basis)
            for (const auto& r : a)
                REQUIRE(ivec_dot(r, v) == 0);
        // Fullness: any kernel vector with small entries must be an integer
        // combination of the basis (solve with the basis as columns).
        if (!basis.empty()) {
            std::vector<IVec> cols_mat(cols, IVec(basis.size()));
            for (size_t i = 0; i < cols; ++i)
                for (size_t j = 0; j < basis.size(); ++j)
                    cols_mat[i][j] = basis[j][i];
            for (int probe = 0; probe < 5; ++probe) {
                IVec comb(cols, 0);
                for (const auto& v : basis) {
                    Int c = entry(rng);
                    comb = ivec_add(comb, ivec_scale(c, v));
                }
                REQUIRE(integer_solve(cols_mat, comb).has_value());
            }
        }
    }
}

TEST_CASE("integer solve: divisibility failures are detected")
{
    std::vector<IVec> a = {{2, 0}, {0, 2}};
    REQUIRE_FALSE(integer_solve(a, {1, 0}).has_value());
    auto k = integer_solve(a, {4, -6});
    REQUIRE(k.has_value());
    REQUIRE(*k == IVec{2, -3});
}

TEST_CASE("integer solve agrees with the matrix action (randomized)")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<Int> entry(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
        std::vector<IVec> a(rows, IVec(cols));
        for (auto& r : a)
            for (auto& x : r)
                x = entry(rng);
        IVec k(cols);
        for (auto& x : k)
            x = entry(rng);
        IVec u(rows);
        for (size_t i = 0; i < rows; ++i)
            u[i] = to_int(ivec_dot(a[i], k));
        auto sol = integer_solve(a, u);
        REQUIRE(sol.has_value());
        for (size_t i = 0; i < rows; ++i)
            REQUIRE(ivec_dot(a[i], *sol) == u[i]);
    }
}

TEST_CASE("canonical lattice basis: trailing pivot positive, deterministic")
{
    // Same lattice presented two ways must canonicalize identically.
    std::vector<IVec> b1 = {{9, 1, -5, -3, -2, -1, 1}};
    std::vector<IVec> b2 = {{-9, -1, 5, 3, 2, 1, -1}};
    auto c1 = canonical_lattice_basis(b1);
    auto c2 = canonical_lattice_basis(b2);
    REQUIRE(c1 == c2);
    REQUIRE(c1.size() == 1);
    REQUIRE(c1[0].back() == 1);

    std::vector<IVec> r2 = {{1, 0, 2, 1}, {0, 1, 3, 2}};
    std::vector<IVec> r2_mixed = {{1, 1, 5, 3}, {-1, 0, -2, -1}};  // same lattice
    REQUIRE(canonical_lattice_basis(r2) == canonical_lattice_basis(r2_mixed));
}
