#pragma once

// Bracket symbols: the signed reciprocal/falling products that appear as
// series coefficients, plus the classical rising factorial.
//
//   [z]_0 = 1
//   [z]_k = 1/((z+1)(z+2)...(z+k))        for k > 0
//   [z]_k = z(z-1)...(z+k+1)              for k < 0
//
// [z]_k with k > 0 is undefined when a factor vanishes, i.e. when z is a
// negative integer with k >= -z; that case throws.  [0]_k = 0 for k < 0 is a
// well-defined structural zero (first factor is z = 0).

#include <stdexcept>

#include "hypalg/rational.hpp"
#include "hypalg/vec.hpp"

namespace hypalg {

inline Rat bracket(const Rat& z, Int k)
{
    if (k == 0)
        return Rat(1);
    if (k > 0) {
        if (is_integer(z) && z < 0 && k >= -z)
            throw std::domain_error("bracket: undefined, zero factor in denominator");
        Rat denom = 1;
        for (Int i = 1; i <= k; ++i)
            denom *= z + i;
        return 1 / denom;
    }
    Rat prod = 1;
    for (Int i = 0; i < -k; ++i) {
        prod *= z - i;
        if (prod == 0)
            return prod;
    }
    return prod;
}

inline Rat bracket_vec(const QVec& v, const IVec& k)
{
    check_same_size(v.size(), k.size(), "bracket_vec");
    Rat prod = 1;
    bool zero = false;
    for (size_t i = 0; i < v.size(); ++i) {
        Rat f = bracket(v[i], k[i]);  // evaluate every factor so domain errors always surface
        if (f == 0)
            zero = true;
        else
            prod *= f;
    }
    return zero ? Rat(0) : prod;
}

// Rising factorial (a)_k = a(a+1)...(a+k-1), k >= 0.
inline Rat pochhammer(const Rat& a, Int k)
{
    if (k < 0)
        throw std::invalid_argument("pochhammer: negative index");
    Rat prod = 1;
    for (Int i = 0; i < k; ++i)
        prod *= a + i;
    return prod;
}

}  // namespace hypalg
