#pragma once

// Exact linear algebra: rational Gaussian elimination (rank, kernel, solve)
// and integer column-style Hermite reduction with transform tracking, used
// for kernel lattices and particular solutions of A k = u over the integers.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypalg/rational.hpp"
#include "hypalg/vec.hpp"

namespace hypalg {

using QMat = std::vector<QVec>;
using ZMat = std::vector<std::vector<BigInt>>;

inline size_t q_ncols(const QMat& m)
{
    return m.empty() ? 0 : m[0].size();
}

// Row echelon form in place; returns pivot columns.  Rows keep full length.
inline std::vector<size_t> q_echelon(QMat& m)
{
    std::vector<size_t> pivots;
    size_t rows = m.size(), cols = q_ncols(m);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(m[r], m[sel]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j)
            m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t q_rank(QMat m)
{
    return q_echelon(m).size();
}

// Basis of { x : M x = 0 }, one vector per free column, deterministic.
inline std::vector<QVec> q_nullspace(QMat m, size_t cols)
{
    for (auto& row : m)
        check_same_size(row.size(), cols, "q_nullspace");
    std::vector<size_t> pivots = q_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots)
        is_pivot[c] = true;
    std::vector<QVec> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        QVec v(cols, Rat(0));
        v[f] = 1;
        for (size_t t = 0; t < pivots.size(); ++t)
            v[pivots[t]] = -m[t][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of M x = b (free variables zero), or nullopt when inconsistent.
inline std::optional<QVec> q_solve(QMat m, const QVec& b)
{
    size_t rows = m.size(), cols = q_ncols(m);
    check_same_size(rows, b.size(), "q_solve");
    for (size_t i = 0; i < rows; ++i)
        m[i].push_back(b[i]);
    std::vector<size_t> pivots = q_echelon(m);
    QVec x(cols, Rat(0));
    for (size_t t = 0; t < pivots.size(); ++t) {
        if (pivots[t] == cols)
            return std::nullopt;  // pivot in the augmented column
        x[pivots[t]] = m[t][cols];
    }
    return x;
}

// Scales a nonzero rational vector to a primitive integer vector (gcd 1),
// preserving direction.
inline IVec primitive_vector(const QVec& v)
{
    BigInt l = 1;
    for (const Rat& x : v)
        l = lcm(l, rat_den(x));
    BigInt g = 0;
    std::vector<BigInt> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = rat_num(v[i]) * (l / rat_den(v[i]));
        g = gcd(g, w[i]);
    }
    if (g == 0)
        throw std::invalid_argument("primitive_vector: zero vector");
    IVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = to_int(w[i] / g);
    return out;
}

// Column Hermite reduction A·U = H with U unimodular, H in column echelon
// form (pivot rows strictly increasing, zero columns trailing).
struct ColumnEchelon {
    ZMat h;                         // rows x cols, echelon
    ZMat u;                         // cols x cols, unimodular
    std::vector<size_t> pivot_row;  // one entry per nonzero column of h
};

inline ColumnEchelon column_echelon(const ZMat& a)
{
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (auto& row : a)
        check_same_size(row.size(), cols, "column_echelon");
    ColumnEchelon res;
    res.h = a;
    res.u.assign(cols, std::vector<BigInt>(cols, 0));
    for (size_t j = 0; j < cols; ++j)
        res.u[j][j] = 1;

    auto col_sub = [&](size_t dst, size_t src, const BigInt& q) {
        for (size_t i = 0; i < rows; ++i)
            res.h[i][dst] -= q * res.h[i][src];
        for (size_t i = 0; i < cols; ++i)
            res.u[i][dst] -= q * res.u[i][src];
    };
    auto col_swap = [&](size_t x, size_t y) {
        for (size_t i = 0; i < rows; ++i)
            std::swap(res.h[i][x], res.h[i][y]);
        for (size_t i = 0; i < cols; ++i)
            std::swap(res.u[i][x], res.u[i][y]);
    };
    auto col_negate = [&](size_t x) {
        for (size_t i = 0; i < rows; ++i)
            res.h[i][x] = -res.h[i][x];
        for (size_t i = 0; i < cols; ++i)
            res.u[i][x] = -res.u[i][x];
    };

    size_t next = 0;  // next free column slot
    for (size_t row = 0; row < rows && next < cols; ++row) {
        // Euclidean gcd sweep across columns next..cols-1 on this row.
        while (true) {
            size_t best = cols;
            for (size_t c = next; c < cols; ++c) {
                if (res.h[row][c] == 0)
                    continue;
                if (best == cols || abs(res.h[row][c]) < abs(res.h[row][best]))
                    best = c;
            }
            if (best == cols)
                break;  // row already clear
            if (best != next)
                col_swap(next, best);
            bool clean = true;
            for (size_t c = next + 1; c < cols; ++c) {
                if (res.h[row][c] == 0)
                    continue;
                BigInt q = res.h[row][c] / res.h[row][next];  // truncated division
                col_sub(c, next, q);
                if (res.h[row][c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (res.h[row][next] != 0) {
            if (res.h[row][next] < 0)
                col_negate(next);
            res.pivot_row.push_back(row);
            ++next;
        }
    }
    return res;
}

inline ZMat to_zmat(const std::vector<IVec>& rows)
{
    ZMat m(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        m[i].assign(rows[i].begin(), rows[i].end());
    return m;
}

// Basis of the integer kernel { k : A k = 0 }, one IVec per basis vector.
// The basis spans the full kernel lattice (not a finite-index sublattice).
inline std::vector<IVec> integer_kernel(const std::vector<IVec>& a_rows)
{
    if (a_rows.empty())
        return {};
    ColumnEchelon ce = column_echelon(to_zmat(a_rows));
    size_t cols = a_rows[0].size(), rank = ce.pivot_row.size();
    std::vector<IVec> basis;
    for (size_t c = rank; c < cols; ++c) {
        IVec v(cols);
        for (size_t i = 0; i < cols; ++i)
            v[i] = to_int(ce.u[i][c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One integer solution of A k = u, or nullopt when none exists.
inline std::optional<IVec> integer_solve(const std::vector<IVec>& a_rows, const IVec& u)
{
    check_same_size(a_rows.size(), u.size(), "integer_solve");
    if (a_rows.empty())
        return IVec{};
    ColumnEchelon ce = column_echelon(to_zmat(a_rows));
    size_t rows = a_rows.size(), cols = a_rows[0].size();
    std::vector<BigInt> w(u.begin(), u.end());
    std::vector<BigInt> y(ce.pivot_row.size(), 0);
    for (size_t t = 0; t < ce.pivot_row.size(); ++t) {
        size_t r = ce.pivot_row[t];
        if (w[r] % ce.h[r][t] != 0)
            return std::nullopt;
        y[t] = w[r] / ce.h[r][t];
        for (size_t i = 0; i < rows; ++i)
            w[i] -= y[t] * ce.h[i][t];
    }
    for (size_t i = 0; i < rows; ++i)
        if (w[i] != 0)
            return std::nullopt;
    IVec k(cols, 0);
    for (size_t i = 0; i < cols; ++i) {
        BigInt s = 0;
        for (size_t t = 0; t < y.size(); ++t)
            s += ce.u[i][t] * y[t];
        k[i] = to_int(s);
    }
    return k;
}

// Canonical form of a lattice basis: row Hermite form built from the right,
// trailing pivot of each row positive, other rows reduced at pivot columns,
// rows ordered by increasing pivot column.  Matches the convention that a
// rank-one kernel is reported with positive last nonzero entry.
inline std::vector<IVec> canonical_lattice_basis(std::vector<IVec> rows)
{
    rows.erase(std::remove_if(rows.begin(), rows.end(), ivec_is_zero), rows.end());
    if (rows.empty())
        return rows;
    size_t cols = rows[0].size();
    ZMat m = to_zmat(rows);
    std::vector<size_t> fixed;  // indices into m, in order of decreasing pivot column
    std::vector<size_t> pivot_col;
    size_t active = m.size();   // rows 0..active-1 still unreduced
    for (size_t cc = cols; cc-- > 0 && active > 0;) {
        // Euclidean sweep on column cc over the active rows.
        while (true) {
            size_t best = active;
            for (size_t r = 0; r < active; ++r) {
                if (m[r][cc] == 0)
                    continue;
                if (best == active || abs(m[r][cc]) < abs(m[best][cc]))
                    best = r;
            }
            if (best == active)
                break;
            std::swap(m[best], m[active - 1]);
            bool clean = true;
            for (size_t r = 0; r < active - 1; ++r) {
                if (m[r][cc] == 0)
                    continue;
                BigInt q = m[r][cc] / m[active - 1][cc];
                for (size_t j = 0; j < cols; ++j)
                    m[r][j] -= q * m[active - 1][j];
                if (m[r][cc] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (m[active - 1][cc] != 0) {
            if (m[active - 1][cc] < 0)
                for (size_t j = 0; j < cols; ++j)
                    m[active - 1][j] = -m[active - 1][j];
            // Reduce already-fixed rows at this pivot column into [0, pivot).
            for (size_t f : fixed) {
                BigInt q = m[f][cc] / m[active - 1][cc];
                if (m[f][cc] - q * m[active - 1][cc] < 0)
                    q -= 1;
                if (q != 0)
                    for (size_t j = 0; j < cols; ++j)
                        m[f][j] -= q * m[active - 1][j];
            }
            fixed.push_back(active - 1);
            pivot_col.push_back(cc);
            --active;
        }
    }
    std::vector<IVec> out;
    for (size_t t = fixed.size(); t-- > 0;) {  // increasing pivot column
        IVec v(cols);
        for (size_t j = 0; j < cols; ++j)
            v[j] = to_int(m[fixed[t]][j]);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace hypalg
