#pragma once

// Factorial-ratio sequences and their integrality: the polytope classifier,
// two independent oracles (direct evaluation and the step-function
// criterion), the p-adic shift map on exponents with its orbit certificate,
// and window-scoped p-integrality reports for series coefficients.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "hypalg/logseries.hpp"
#include "hypalg/series.hpp"

namespace hypalg {

// Balanced ratio ∏ (α_i k)! / ∏ (β_j k)!; both entry lists positive with
// equal sums.
struct RatioSpec {
    IVec alpha;
    IVec beta;

    size_t n() const { return alpha.size(); }
    size_t m() const { return alpha.size() + beta.size(); }
    bool operator==(const RatioSpec&) const = default;
};

inline void validate_ratio_spec(const RatioSpec& spec)
{
    if (spec.alpha.empty() || spec.beta.empty())
        throw std::invalid_argument("RatioSpec: empty entry list");
    BigInt sa = 0, sb = 0;
    for (Int a : spec.alpha) {
        if (a < 1)
            throw std::invalid_argument("RatioSpec: entries must be positive");
        sa += a;
    }
    for (Int b : spec.beta) {
        if (b < 1)
            throw std::invalid_argument("RatioSpec: entries must be positive");
        sb += b;
    }
    if (sa != sb)
        throw std::invalid_argument("RatioSpec: entry sums differ");
}

inline Rat ratio_term(const RatioSpec& spec, Int k)
{
    if (k < 0)
        throw std::invalid_argument("ratio_term: negative index");
    validate_ratio_spec(spec);
    BigInt num = 1, den = 1;
    for (Int a : spec.alpha)
        num *= factorial(a * k);
    for (Int b : spec.beta)
        den *= factorial(b * k);
    return Rat(num) / Rat(den);
}

// --- Integrality oracles -------------------------------------------------------

struct PolytopeCheck {
    bool integral = true;
    std::optional<IVec> witness;  // an interior lattice point of the dilation
};

// Classifier: the terms are all integers exactly when the n-fold dilation of
// the associated polytope has no interior lattice points.
inline PolytopeCheck classify_integrality(const RatioSpec& spec)
{
    validate_ratio_spec(spec);
    HPolytope delta = delta_alpha_beta(spec.alpha, spec.beta);
    std::vector<IVec> inside = interior_lattice_points(dilate(delta, static_cast<Int>(spec.n())));
    PolytopeCheck res;
    if (!inside.empty()) {
        res.integral = false;
        res.witness = inside.front();
    }
    return res;
}

struct DirectCheck {
    bool integral = true;
    Int first_failure = -1;  // smallest k with a non-integral term, -1 if none
};

// Evaluates the terms incrementally through k = K and reports the first
// non-integral one.
inline DirectCheck direct_integrality(const RatioSpec& spec, Int K)
{
    if (K < 1)
        throw std::invalid_argument("direct_integrality: K must be positive");
    validate_ratio_spec(spec);
    DirectCheck res;
    Rat u = 1;
    for (Int k = 1; k <= K; ++k) {
        BigInt num = 1, den = 1;
        for (Int a : spec.alpha)
            for (Int t = 1; t <= a; ++t)
                num *= a * (k - 1) + t;
        for (Int b : spec.beta)
            for (Int t = 1; t <= b; ++t)
                den *= b * (k - 1) + t;
        u *= Rat(num) / Rat(den);
        if (rat_den(u) != 1) {
            res.integral = false;
            res.first_failure = k;
            break;
        }
    }
    return res;
}

// Step-function criterion: Σ⌊α_i x⌋ − Σ⌊β_j x⌋ ≥ 0 at every breakpoint
// c/α_i, c/β_j in (0,1).  The function is constant between breakpoints and
// periodic for balanced specs, so this decides integrality of all terms.
inline bool landau_check(const RatioSpec& spec)
{
    validate_ratio_spec(spec);
    std::set<Rat> breakpoints;
    auto collect = [&](Int a) {
        for (Int c = 1; c < a; ++c)
            breakpoints.insert(Rat(c, a));
    };
    for (Int a : spec.alpha)
        collect(a);
    for (Int b : spec.beta)
        collect(b);
    for (const Rat& x : breakpoints) {
        BigInt f = 0;
        for (Int a : spec.alpha)
            f += rat_floor(x * a);
        for (Int b : spec.beta)
            f -= rat_floor(x * b);
        if (f < 0)
            return false;
    }
    return true;
}

// All balanced specs with Σα ≤ max_sum, |α| ≤ max_n, |β| ≤ max_mn; entry
// lists are canonical (non-increasing), ordered by sum then lexicographically.
inline std::vector<RatioSpec> enumerate_balanced_specs(Int max_sum, size_t max_n, size_t max_mn)
{
    if (max_sum < 1 || max_n < 1 || max_mn < 1)
        throw std::invalid_argument("enumerate_balanced_specs: bounds must be positive");
    auto partitions = [](Int sum, size_t max_parts) {
        std::vector<IVec> out;
        IVec cur;
        auto rec = [&](auto&& self, Int left, Int cap) -> void {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            if (cur.size() == max_parts)
                return;
            for (Int t = std::min(cap, left); t >= 1; --t) {
                cur.push_back(t);
                self(self, left - t, t);
                cur.pop_back();
            }
        };
        rec(rec, sum, sum);
        return out;
    };
    std::vector<RatioSpec> specs;
    for (Int s = 1; s <= max_sum; ++s) {
        std::vector<IVec> as = partitions(s, max_n);
        std::vector<IVec> bs = partitions(s, max_mn);
        for (const IVec& a : as)
            for (const IVec& b : bs)
                specs.push_back({a, b});
    }
    return specs;
}

// --- The p-adic shift map -------------------------------------------------------

namespace detail {

inline Int mod_inverse(Int a, Int p)
{
    Int t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0)
        nr += p;
    while (nr != 0) {
        Int q = r / nr;
        Int tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return t < 0 ? t + p : t;
}

}  // namespace detail

// The unique p-integral r' in (−1,0] with p·r' − r integral.
inline Rat dwork_map(const Rat& r, Int p)
{
    if (p < 2)
        throw std::invalid_argument("dwork_map: modulus must be at least 2");
    if (r > 0 || r <= -1)
        throw std::invalid_argument("dwork_map: argument outside (-1,0]");
    if (rat_den(r) % p == 0)
        throw std::invalid_argument("dwork_map: argument is not p-integral");
    Int s = static_cast<Int>(BigInt((-rat_num(r)) % p));
    Int t = static_cast<Int>(BigInt(rat_den(r) % p));
    Int z = (s * detail::mod_inverse(t, p)) % p;
    Rat out = (r + z) / p;
    while (out > 0) {
        z -= p;
        out = (r + z) / p;
    }
    while (out <= -1) {
        z += p;
        out = (r + z) / p;
    }
    return out;
}

// Applies the shift map entrywise for the given number of iterations and
// checks that every iterate realizes an integral parameter that stays
// interior in the cone at the original height.
inline bool dwork_orbit_check(const ExponentVector& v, const LatticeConfig& cfg, Int p,
                              Int iterations)
{
    check_same_size(v.size(), cfg.size(), "dwork_orbit_check");
    if (iterations < 0)
        throw std::invalid_argument("dwork_orbit_check: negative iteration count");
    for (const Rat& x : v) {
        if (x > 0 || x <= -1)
            throw std::invalid_argument("dwork_orbit_check: entries must lie in (-1,0]");
        if (rat_den(x) % p == 0)
            throw std::invalid_argument("dwork_orbit_check: entry is not p-integral");
    }
    HCone cone = cone_hrep(cfg);
    auto param = [&](const ExponentVector& w) -> std::optional<IVec> {
        QVec q = qvec_scale(Rat(-1), exponent_parameter(w, cfg));
        if (!qvec_is_integral(q))
            return std::nullopt;
        return qvec_to_ivec(q);
    };
    std::optional<IVec> u0 = param(v);
    if (!u0 || !cone.interior(*u0))
        throw std::invalid_argument(
            "dwork_orbit_check: initial parameter is not an interior lattice point");
    Int height = u0->back();
    ExponentVector w = v;
    for (Int k = 1; k <= iterations; ++k) {
        for (Rat& x : w)
            x = dwork_map(x, p);
        std::optional<IVec> u = param(w);
        if (!u || !cone.interior(*u) || u->back() != height)
            return false;
    }
    return true;
}

// --- p-integrality reports -------------------------------------------------------

struct PIntegralityReport {
    struct PrimeEntry {
        Int max_denominator_valuation = 0;
        std::optional<IVec> offender;  // offset attaining the maximum, if positive
    };
    std::map<Int, PrimeEntry> per_prime;
    Window window;

    bool clean() const
    {
        for (const auto& [p, e] : per_prime)
            if (e.max_denominator_valuation > 0)
                return false;
        return true;
    }
};

inline PIntegralityReport p_integrality_report(const FormalSeries& s, const std::vector<Int>& primes,
                                               std::optional<Window> window = std::nullopt)
{
    PIntegralityReport rep;
    rep.window = window ? intersect(s.window, *window) : s.window;
    for (Int p : primes)
        rep.per_prime[p];
    for (const auto& [k, c] : s.terms) {
        if (!rep.window.contains(k))
            continue;
        BigInt den = rat_den(c);
        for (Int p : primes) {
            Int val = 0;
            BigInt d = den;
            while (d % p == 0) {
                d /= p;
                ++val;
            }
            auto& entry = rep.per_prime[p];
            if (val > entry.max_denominator_valuation) {
                entry.max_denominator_valuation = val;
                entry.offender = k;
            }
        }
    }
    return rep;
}

// Primes up to the bound whose residue fields see the exponent vector: any
// prime dividing a denominator of v is excluded.
inline std::vector<Int> default_primes(const ExponentVector& v, Int bound = 50)
{
    std::vector<Int> out;
    for (Int p : primes_upto(bound)) {
        bool ok = true;
        for (const Rat& x : v)
            if (rat_den(x) % p == 0) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(p);
    }
    return out;
}

// Evidence scan for integrality of the interior-parameter closed form: all
// hypotheses are enforced, then every coefficient in the window is checked
// against all primes up to 50.  The verdict is window-scoped evidence, not a
// theorem.
inline PIntegralityReport conjecture_816_report(const IVec& alpha, const IVec& beta, const IVec& u,
                                                const Window& window)
{
    RatioSpec spec{alpha, beta};
    if (spec.m() <= 2 * spec.n())
        throw std::invalid_argument("conjecture_816_report: requires m > 2n");
    if (!classify_integrality(spec).integral)
        throw std::invalid_argument("conjecture_816_report: dilated polytope has interior points");
    FormalSeries s = closed_form_816(alpha, beta, u, window);
    return p_integrality_report(s, primes_upto(50));
}

}  // namespace hypalg
