#pragma once

// Logarithmic quasisolutions.  Coefficients are polynomials in the formal
// symbols log λ_1..log λ_N; the building blocks are the M_{k,i} table, the
// one-variable factors f^{(r)}_k(t)/t^k, quasisolutions attached to index
// sequences, their log-free components, weighted combinations satisfying the
// full operator system, and the interior-parameter closed form.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "hypalg/series.hpp"

namespace hypalg {

// Polynomial Σ c_e ∏_i log^{e_i} λ_i keyed by the log-exponent vector e.
// Zero coefficients are never stored; the zero polynomial is the empty map.
struct LogPolynomial {
    std::map<IVec, Rat> coeffs;

    bool operator==(const LogPolynomial&) const = default;
    bool is_zero() const { return coeffs.empty(); }

    void add_term(const IVec& e, const Rat& c)
    {
        if (c == 0)
            return;
        auto it = coeffs.find(e);
        if (it == coeffs.end()) {
            coeffs.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0)
                coeffs.erase(it);
        }
    }
    // Coefficient of the log-free monomial.
    Rat constant(size_t n_vars) const
    {
        auto it = coeffs.find(IVec(n_vars, 0));
        return it == coeffs.end() ? Rat(0) : it->second;
    }
};

inline LogPolynomial log_constant(size_t n_vars, const Rat& c)
{
    LogPolynomial p;
    p.add_term(IVec(n_vars, 0), c);
    return p;
}

inline LogPolynomial operator+(const LogPolynomial& a, const LogPolynomial& b)
{
    LogPolynomial r = a;
    for (const auto& [e, c] : b.coeffs)
        r.add_term(e, c);
    return r;
}

inline LogPolynomial operator*(const Rat& f, const LogPolynomial& p)
{
    LogPolynomial r;
    if (f == 0)
        return r;
    for (const auto& [e, c] : p.coeffs)
        r.coeffs.emplace(e, f * c);
    return r;
}

inline LogPolynomial operator*(const LogPolynomial& a, const LogPolynomial& b)
{
    LogPolynomial r;
    for (const auto& [ea, ca] : a.coeffs)
        for (const auto& [eb, cb] : b.coeffs)
            r.add_term(ivec_add(ea, eb), ca * cb);
    return r;
}

// Formal partial derivative with respect to log λ_j.
inline LogPolynomial log_derivative(const LogPolynomial& p, size_t j)
{
    LogPolynomial r;
    for (const auto& [e, c] : p.coeffs) {
        if (j >= e.size())
            throw std::out_of_range("log_derivative: variable index");
        if (e[j] == 0)
            continue;
        IVec d = e;
        --d[j];
        r.add_term(d, c * e[j]);
    }
    return r;
}

// Series-coefficient hooks: λ_j ∂_j acting on c(log λ)·λ^w contributes
// w_j·c + ∂c/∂(log λ_j).
inline bool coeff_is_zero(const LogPolynomial& p) { return p.is_zero(); }
inline LogPolynomial coeff_scale(const Rat& f, const LogPolynomial& p) { return f * p; }
inline LogPolynomial coeff_add(const LogPolynomial& a, const LogPolynomial& b) { return a + b; }
inline LogPolynomial coeff_log_lower(const LogPolynomial& p, size_t j)
{
    return log_derivative(p, j);
}

using LogSeries = SeriesT<LogPolynomial>;

// --- The M table and one-variable factors -------------------------------------

// Three-case coefficient table: for k>0 a complete homogeneous sum over
// 1..1/k scaled by (−1)^i/k!, for k=0 the Kronecker delta, and for k<0 an
// elementary symmetric sum over 1..1/(−k−1) scaled by (−1)^{−k−i}(−k−1)!,
// vanishing for i=0 or i>−k.
inline Rat m_coeff(Int k, Int i)
{
    if (i < 0)
        throw std::invalid_argument("m_coeff: negative order");
    if (k == 0)
        return i == 0 ? Rat(1) : Rat(0);
    if (k > 0) {
        std::vector<Rat> h(static_cast<size_t>(i) + 1, Rat(0));
        h[0] = 1;
        for (Int t = 1; t <= k; ++t)
            for (Int j = 1; j <= i; ++j)
                h[j] += h[j - 1] / t;
        Rat c = h[static_cast<size_t>(i)] / Rat(factorial(k));
        return i % 2 ? -c : c;
    }
    if (i == 0 || i > -k)
        return 0;
    Int top = -k - 1;
    std::vector<Rat> e(static_cast<size_t>(i), Rat(0));
    e[0] = 1;
    for (Int t = 1; t <= top; ++t)
        for (Int j = i - 1; j >= 1; --j)
            e[j] += e[j - 1] / t;
    Rat c = Rat(factorial(top)) * e[static_cast<size_t>(i) - 1];
    return (-k - i) % 2 ? -c : c;
}

// Log-polynomial factor of f^{(r)}_k(t)/t^k: Σ_i M_{k,i}·r(r−1)⋯(r−i+1)·log^{r−i} t,
// a one-variable polynomial (log-exponent keys of length 1).
inline LogPolynomial f_poly(Int r, Int k)
{
    if (r < 0)
        throw std::invalid_argument("f_poly: negative order");
    LogPolynomial p;
    Rat falling = 1;
    for (Int i = 0; i <= r; ++i) {
        if (i > 0)
            falling *= r - i + 1;
        p.add_term(IVec{r - i}, m_coeff(k, i) * falling);
    }
    return p;
}

namespace detail {

// Reinterprets a one-variable log polynomial as a polynomial in log λ_var
// among n_vars symbols.
inline LogPolynomial embed_log_var(const LogPolynomial& p, size_t var, size_t n_vars)
{
    LogPolynomial r;
    for (const auto& [e, c] : p.coeffs) {
        IVec key(n_vars, 0);
        key[var] = e[0];
        r.coeffs.emplace(std::move(key), c);
    }
    return r;
}

}  // namespace detail

// --- Index sequences ----------------------------------------------------------

// A sequence of r variable indices; only its multiplicity profile matters,
// so the entries are kept sorted.
struct SequenceP {
    std::vector<size_t> entries;
    std::vector<Int> multiplicity;  // per variable index, sums to order()

    SequenceP(std::vector<size_t> p, size_t n_vars) : entries(std::move(p))
    {
        std::sort(entries.begin(), entries.end());
        multiplicity.assign(n_vars, 0);
        for (size_t i : entries) {
            if (i >= n_vars)
                throw std::out_of_range("SequenceP: index out of range");
            ++multiplicity[i];
        }
    }

    size_t order() const { return entries.size(); }
    size_t vars() const { return multiplicity.size(); }
    Int rho(size_t i) const { return multiplicity.at(i); }
    bool operator==(const SequenceP&) const = default;
};

// True when the offset is structurally annihilated: some variable outside
// the sequence carries a negative offset, so its factor vanishes.
inline bool lemma87_filter(const SequenceP& P, const IVec& k)
{
    check_same_size(k.size(), P.vars(), "lemma87_filter");
    for (size_t i = 0; i < k.size(); ++i)
        if (P.rho(i) == 0 && k[i] < 0)
            return true;
    return false;
}

// --- Quasisolutions and components ---------------------------------------------

// Σ_{Σ k_i a_i = u} λ^k ∏_i (f-factor of order ρ_P(i) at k_i): annihilated by
// every box operator, with log degree in λ_i bounded by ρ_P(i).
inline LogSeries quasisolution(const SequenceP& P, const IVec& u, const LatticeConfig& cfg,
                               const RelationLattice& lat, const Window& window)
{
    check_same_size(P.vars(), cfg.size(), "quasisolution");
    LogSeries s = make_series<LogPolynomial>(QVec(cfg.size(), Rat(0)), window);
    for (const IVec& k : solve_offsets(cfg, u, lat, window)) {
        if (lemma87_filter(P, k))
            continue;
        LogPolynomial term = log_constant(cfg.size(), Rat(1));
        for (size_t i = 0; i < cfg.size() && !term.is_zero(); ++i)
            term = term * detail::embed_log_var(f_poly(P.rho(i), k[i]), i, cfg.size());
        s.insert(k, term);
    }
    return s;
}

// Log-free component Σ_{Σ k_i a_i = u} (∏_i M_{k_i,ρ_Q(i)}) λ^k; each monomial
// satisfies the Euler operators with parameter u.
inline FormalSeries phiQ_series(const SequenceP& Q, const IVec& u, const LatticeConfig& cfg,
                                const RelationLattice& lat, const Window& window)
{
    check_same_size(Q.vars(), cfg.size(), "phiQ_series");
    FormalSeries s = make_series<Rat>(QVec(cfg.size(), Rat(0)), window);
    for (const IVec& k : solve_offsets(cfg, u, lat, window)) {
        Rat c = 1;
        for (size_t i = 0; i < cfg.size() && c != 0; ++i)
            c *= m_coeff(k[i], Q.rho(i));
        s.insert(k, c);
    }
    return s;
}

// Σ_{P ∈ {0..N−1}^r} l^{(1)}_{p_1}⋯l^{(r)}_{p_r} Ψ^P_u: satisfies both the box
// and the Euler operators with parameter u.  Each weight vector must be a
// relation of the configuration.
inline LogSeries combine_solution(const std::vector<IVec>& ls, const IVec& u,
                                  const LatticeConfig& cfg, const RelationLattice& lat,
                                  const Window& window)
{
    size_t n = cfg.size();
    for (const IVec& l : ls) {
        check_same_size(l.size(), n, "combine_solution");
        for (size_t r = 0; r <= cfg.m; ++r) {
            BigInt s = 0;
            for (size_t i = 0; i < n; ++i)
                s += BigInt(l[i]) * cfg.lifted[i][r];
            if (s != 0)
                throw std::invalid_argument("combine_solution: weight vector is not a relation");
        }
    }
    size_t r = ls.size();
    // Collapse the N^r ordered tuples onto their sorted representatives.
    std::map<std::vector<size_t>, Rat> weights;
    std::vector<size_t> p(r, 0);
    while (true) {
        Rat w = 1;
        for (size_t j = 0; j < r && w != 0; ++j)
            w *= ls[j][p[j]];
        if (w != 0) {
            std::vector<size_t> key = p;
            std::sort(key.begin(), key.end());
            weights[key] += w;
        }
        size_t j = 0;
        while (j < r && p[j] + 1 == n)
            p[j++] = 0;
        if (j == r)
            break;
        ++p[j];
    }
    LogSeries total = make_series<LogPolynomial>(QVec(n, Rat(0)), window);
    for (const auto& [key, w] : weights) {
        if (w == 0)
            continue;
        LogSeries part = quasisolution(SequenceP(key, n), u, cfg, lat, window);
        total = linear_combination(Rat(1), total, w, part);
    }
    return total;
}

// --- Log-free projections -------------------------------------------------------

inline FormalSeries log_free_part(const LogSeries& s)
{
    FormalSeries out = make_series<Rat>(s.base, s.window);
    for (const auto& [k, p] : s.terms)
        out.insert(k, p.constant(s.vars()));
    return out;
}

inline bool has_log_terms(const LogSeries& s)
{
    IVec zero(s.vars(), 0);
    for (const auto& [k, p] : s.terms)
        for (const auto& [e, c] : p.coeffs)
            if (e != zero)
                return true;
    return false;
}

// --- Interior-parameter closed form ---------------------------------------------

// For the ratio configuration {0, e_1..e_m, (α,−β)} with m > 2n and an
// interior cone point u, the order-(n+1) solution with parameter −u is
// log-free with coefficients
//   (−1)^{n+1−Σ_{i≤n} k_i} ∏_{i≤n} (−k_i−1)! / ∏_{j>n} k_j!
// over offsets with k_0..k_n < 0 and k_{n+1}..k_{m+1} ≥ 0 summing to −u.
inline FormalSeries closed_form_816(const IVec& alpha, const IVec& beta, const IVec& u,
                                    const Window& window)
{
    LatticeConfig cfg = ratio_config(alpha, beta);
    size_t n = alpha.size();
    size_t m = n + beta.size();
    if (m <= 2 * n)
        throw std::invalid_argument("closed_form_816: requires strictly more denominator weight");
    if (!cone_hrep(cfg).interior(u))
        throw std::invalid_argument("closed_form_816: parameter is not an interior cone point");
    RelationLattice lat = relation_lattice(cfg);
    FormalSeries s = make_series<Rat>(QVec(cfg.size(), Rat(0)), window);
    for (const IVec& k : solve_offsets(cfg, ivec_scale(-1, u), lat, window)) {
        bool sector = true;
        for (size_t i = 0; i <= n && sector; ++i)
            sector = k[i] < 0;
        for (size_t j = n + 1; j < cfg.size() && sector; ++j)
            sector = k[j] >= 0;
        if (!sector)
            continue;
        BigInt num = 1, den = 1;
        Int ksum = 0;
        for (size_t i = 0; i <= n; ++i) {
            num *= factorial(-k[i] - 1);
            ksum += k[i];
        }
        for (size_t j = n + 1; j < cfg.size(); ++j)
            den *= factorial(k[j]);
        Rat c = Rat(num) / Rat(den);
        if ((static_cast<Int>(n) + 1 - ksum) % 2)
            c = -c;
        s.insert(k, c);
    }
    return s;
}

}  // namespace hypalg
