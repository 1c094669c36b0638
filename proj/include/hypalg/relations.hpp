#pragma once

// The lattice of integer relations among the lifted configuration points,
// negative supports of exponent vectors, and the sublattice preserving a
// given negative support.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hypalg/geometry.hpp"
#include "hypalg/linalg.hpp"
#include "hypalg/rational.hpp"
#include "hypalg/vec.hpp"

namespace hypalg {

// Exponent vectors live in Q^N, one entry per configuration point.
using ExponentVector = QVec;

struct RelationLattice {
    std::vector<IVec> basis;  // canonical: row Hermite form, trailing pivots positive

    size_t rank() const { return basis.size(); }
    bool operator==(const RelationLattice&) const = default;
};

// Integer kernel { l : sum_i l_i a_i = 0 } of the lifted configuration.
inline RelationLattice relation_lattice(const LatticeConfig& cfg)
{
    std::vector<IVec> coord_rows(cfg.m + 1, IVec(cfg.size()));
    for (size_t r = 0; r <= cfg.m; ++r)
        for (size_t i = 0; i < cfg.size(); ++i)
            coord_rows[r][i] = cfg.lifted[i][r];
    RelationLattice lat;
    lat.basis = canonical_lattice_basis(integer_kernel(coord_rows));
    return lat;
}

// Indices whose entry is a negative integer.  Non-integral entries never
// contribute, whatever their sign.
inline std::vector<size_t> nsupp(const ExponentVector& v)
{
    std::vector<size_t> out;
    for (size_t i = 0; i < v.size(); ++i)
        if (is_integer(v[i]) && v[i] < 0)
            out.push_back(i);
    return out;
}

namespace detail {

// Visits every integer combination of the basis with coefficients in
// [-bound, bound]^rank, passing the combined vector.
template <typename Fn>
void for_each_combination(const std::vector<IVec>& basis, size_t n, Int bound, Fn&& fn)
{
    size_t rank = basis.size();
    BigInt count = 1;
    for (size_t i = 0; i < rank; ++i)
        count *= 2 * BigInt(bound) + 1;
    if (count > BigInt(100000000))
        throw std::runtime_error("lattice search window too large");
    IVec c(rank, -bound);
    QVec dummy;
    while (true) {
        IVec l(n, 0);
        for (size_t i = 0; i < rank; ++i)
            if (c[i] != 0)
                l = ivec_add(l, ivec_scale(c[i], basis[i]));
        fn(l);
        size_t i = rank;
        while (i > 0 && c[i - 1] == bound)
            --i;
        if (i == 0)
            return;
        ++c[i - 1];
        for (size_t j = i; j < rank; ++j)
            c[j] = -bound;
    }
}

}  // namespace detail

// True when no lattice element within the coefficient window shrinks the
// negative support of v; certified only inside that window.
inline bool has_minimal_negative_support(const ExponentVector& v, const RelationLattice& lat,
                                         Int bound = 50)
{
    if (bound < 1)
        throw std::invalid_argument("has_minimal_negative_support: bound must be >= 1");
    std::vector<size_t> base = nsupp(v);
    if (base.empty())
        return true;
    bool minimal = true;
    detail::for_each_combination(lat.basis, v.size(), bound, [&](const IVec& l) {
        if (!minimal || ivec_is_zero(l))
            return;
        std::vector<size_t> shifted = nsupp(qvec_add(v, to_qvec(l)));
        if (shifted.size() < base.size() &&
            std::includes(base.begin(), base.end(), shifted.begin(), shifted.end()))
            minimal = false;
    });
    return minimal;
}

// All lattice elements l in the coefficient window with
// nsupp(v + l) = nsupp(v), sorted lexicographically.
inline std::vector<IVec> lattice_slice_Lv(const ExponentVector& v, const RelationLattice& lat,
                                          Int bound)
{
    if (bound < 1)
        throw std::invalid_argument("lattice_slice_Lv: bound must be >= 1");
    std::vector<size_t> base = nsupp(v);
    std::vector<IVec> out;
    detail::for_each_combination(lat.basis, v.size(), bound, [&](const IVec& l) {
        if (nsupp(qvec_add(v, to_qvec(l))) == base)
            out.push_back(l);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace hypalg
