#pragma once

// Exact arithmetic base layer: big integers, big rationals, and the small
// helpers (parsing, floors, valuations, factorials) everything else leans on.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypalg {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline BigInt rat_num(const Rat& q) { return numerator(q); }
inline BigInt rat_den(const Rat& q) { return denominator(q); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

// Largest integer <= q.
inline BigInt rat_floor(const Rat& q)
{
    BigInt n = rat_num(q), d = rat_den(q);
    BigInt f = n / d;
    if (n < 0 && f * d != n)
        --f;
    return f;
}

inline BigInt rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline Int to_int(const BigInt& n)
{
    if (n > std::numeric_limits<Int>::max() || n < std::numeric_limits<Int>::min())
        throw std::overflow_error("to_int: value exceeds 64-bit range");
    return static_cast<Int>(n);
}

inline Int rat_to_int(const Rat& q)
{
    if (!is_integer(q))
        throw std::invalid_argument("rat_to_int: not an integer");
    return to_int(rat_num(q));
}

inline BigInt factorial(Int n)
{
    if (n < 0)
        throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (Int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// Exponent of p in n (n != 0).
inline int p_valuation(BigInt n, const BigInt& p)
{
    if (n == 0)
        throw std::invalid_argument("p_valuation: zero argument");
    if (p < 2)
        throw std::invalid_argument("p_valuation: p must be >= 2");
    if (n < 0)
        n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Exponent of p in q (negative when p divides the denominator).
inline int p_valuation(const Rat& q, const BigInt& p)
{
    if (q == 0)
        throw std::invalid_argument("p_valuation: zero argument");
    return p_valuation(rat_num(q), p) - p_valuation(rat_den(q), p);
}

// True when q can be written with a denominator prime to p.
inline bool p_integral(const Rat& q, const BigInt& p)
{
    return q == 0 || p_valuation(rat_den(q), p) == 0;
}

// Parses "p", "-p", or "p/q" (q > 0 after normalization).
inline Rat parse_rational(const std::string& s)
{
    auto bad = [&] { return std::invalid_argument("parse_rational: malformed '" + s + "'"); };
    if (s.empty())
        throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0)
            throw bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline std::string to_string(const Rat& q)
{
    std::string s = rat_num(q).str();
    if (!is_integer(q))
        s += "/" + rat_den(q).str();
    return s;
}

// Primes <= bound, by sieve.
inline std::vector<Int> primes_upto(Int bound)
{
    std::vector<Int> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
    for (Int p = 2; p <= bound; ++p) {
        if (composite[static_cast<size_t>(p)])
            continue;
        out.push_back(p);
        for (Int q = p * p; q <= bound; q += p)
            composite[static_cast<size_t>(q)] = true;
    }
    return out;
}

}  // namespace hypalg
