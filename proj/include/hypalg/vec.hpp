#pragma once

// Small dense vector helpers over Int and Rat.  Vectors are plain
// std::vector so lexicographic comparison and hashing come for free.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypalg/rational.hpp"

namespace hypalg {

inline void check_same_size(size_t a, size_t b, const char* where)
{
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

inline IVec ivec_add(const IVec& a, const IVec& b)
{
    check_same_size(a.size(), b.size(), "ivec_add");
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline IVec ivec_sub(const IVec& a, const IVec& b)
{
    check_same_size(a.size(), b.size(), "ivec_sub");
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline IVec ivec_scale(Int c, const IVec& a)
{
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = c * a[i];
    return r;
}

inline BigInt ivec_dot(const IVec& a, const IVec& b)
{
    check_same_size(a.size(), b.size(), "ivec_dot");
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += BigInt(a[i]) * b[i];
    return s;
}

inline bool ivec_is_zero(const IVec& a)
{
    for (Int x : a)
        if (x != 0)
            return false;
    return true;
}

inline QVec to_qvec(const IVec& a)
{
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    return r;
}

inline QVec qvec_add(const QVec& a, const QVec& b)
{
    check_same_size(a.size(), b.size(), "qvec_add");
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline QVec qvec_sub(const QVec& a, const QVec& b)
{
    check_same_size(a.size(), b.size(), "qvec_sub");
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline QVec qvec_scale(const Rat& c, const QVec& a)
{
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = c * a[i];
    return r;
}

inline Rat qvec_dot(const QVec& a, const QVec& b)
{
    check_same_size(a.size(), b.size(), "qvec_dot");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline bool qvec_is_zero(const QVec& a)
{
    for (const Rat& x : a)
        if (x != 0)
            return false;
    return true;
}

inline bool qvec_is_integral(const QVec& a)
{
    for (const Rat& x : a)
        if (!is_integer(x))
            return false;
    return true;
}

// Throws when some entry is non-integral.
inline IVec qvec_to_ivec(const QVec& a)
{
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = rat_to_int(a[i]);
    return r;
}

inline std::string to_string(const IVec& a)
{
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.size(); ++i)
        os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

inline std::string to_string(const QVec& a)
{
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i)
        s += (i ? std::string(",") : std::string()) + to_string(a[i]);
    return s + ")";
}

}  // namespace hypalg
