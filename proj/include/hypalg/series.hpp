#pragma once

// Formal multivariate series with exponents v + k (rational base v, integer
// offsets k) truncated to an explicit support window, plus the differential
// operators acting on them: coordinate derivations, Euler (homogeneity)
// operators, and the box operators attached to lattice relations.
//
// The window is the region of offset space on which the stored terms are
// complete; every operation tracks how the window shrinks so that equality
// and annihilation checks are exact statements about the infinite objects.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hypalg/bracket.hpp"
#include "hypalg/geometry.hpp"
#include "hypalg/relations.hpp"

namespace hypalg {

// Closed integer box in offset space; empty when some lo exceeds hi.
struct Window {
    IVec lo, hi;

    Window() = default;
    Window(IVec l, IVec h) : lo(std::move(l)), hi(std::move(h))
    {
        check_same_size(lo.size(), hi.size(), "Window");
    }
    static Window cube(size_t n, Int radius)
    {
        if (radius < 0)
            throw std::invalid_argument("Window::cube: negative radius");
        return Window(IVec(n, -radius), IVec(n, radius));
    }

    size_t dims() const { return lo.size(); }
    bool empty() const
    {
        for (size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i])
                return true;
        return lo.empty();
    }
    bool contains(const IVec& k) const
    {
        check_same_size(k.size(), lo.size(), "Window::contains");
        for (size_t i = 0; i < k.size(); ++i)
            if (k[i] < lo[i] || k[i] > hi[i])
                return false;
        return true;
    }
    Window shifted(const IVec& d) const
    {
        return Window(ivec_add(lo, d), ivec_add(hi, d));
    }
    bool operator==(const Window&) const = default;
};

inline Window intersect(const Window& a, const Window& b)
{
    check_same_size(a.dims(), b.dims(), "intersect");
    IVec lo(a.dims()), hi(a.dims());
    for (size_t i = 0; i < a.dims(); ++i) {
        lo[i] = std::max(a.lo[i], b.lo[i]);
        hi[i] = std::min(a.hi[i], b.hi[i]);
    }
    return Window(std::move(lo), std::move(hi));
}

// Coefficient hooks for the series template.  Rational coefficients carry no
// logarithms, so the log-lowering part of a derivation is zero.
inline bool coeff_is_zero(const Rat& c) { return c == 0; }
inline Rat coeff_scale(const Rat& f, const Rat& c) { return f * c; }
inline Rat coeff_add(const Rat& a, const Rat& b) { return a + b; }
inline Rat coeff_log_lower(const Rat&, size_t) { return Rat(0); }

template <typename C>
struct SeriesT {
    QVec base;                // exponent base v; term (k, c) represents c * λ^{v+k}
    std::map<IVec, C> terms;  // complete within the window, zero coefficients dropped
    Window window;

    size_t vars() const { return base.size(); }
    bool operator==(const SeriesT&) const = default;

    void insert(const IVec& k, const C& c)
    {
        if (coeff_is_zero(c) || !window.contains(k))
            return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second = coeff_add(it->second, c);
            if (coeff_is_zero(it->second))
                terms.erase(it);
        }
    }
    const C* find(const IVec& k) const
    {
        auto it = terms.find(k);
        return it == terms.end() ? nullptr : &it->second;
    }
    bool is_zero() const { return terms.empty(); }
};

using FormalSeries = SeriesT<Rat>;

template <typename C>
SeriesT<C> make_series(QVec base, Window window)
{
    check_same_size(base.size(), window.dims(), "make_series");
    SeriesT<C> s;
    s.base = std::move(base);
    s.window = std::move(window);
    return s;
}

// Rewrites the same series relative to another base differing by an integer
// vector; offsets and window shift accordingly.
template <typename C>
SeriesT<C> rebase(const SeriesT<C>& s, const QVec& new_base)
{
    check_same_size(new_base.size(), s.vars(), "rebase");
    IVec d = qvec_to_ivec(qvec_sub(s.base, new_base));  // throws unless integral
    SeriesT<C> out = make_series<C>(new_base, s.window.shifted(d));
    for (const auto& [k, c] : s.terms)
        out.insert(ivec_add(k, d), c);
    return out;
}

// ca*a + cb*b on the intersection window; bases must agree up to an integer
// shift (b is rebased onto a's base).
template <typename C>
SeriesT<C> linear_combination(const Rat& ca, const SeriesT<C>& a, const Rat& cb, const SeriesT<C>& b)
{
    SeriesT<C> bb = (a.base == b.base) ? b : rebase(b, a.base);
    SeriesT<C> out = make_series<C>(a.base, intersect(a.window, bb.window));
    for (const auto& [k, c] : a.terms)
        out.insert(k, coeff_scale(ca, c));
    for (const auto& [k, c] : bb.terms)
        out.insert(k, coeff_scale(cb, c));
    return out;
}

template <typename C>
SeriesT<C> subtract(const SeriesT<C>& a, const SeriesT<C>& b)
{
    return linear_combination(Rat(1), a, Rat(-1), b);
}

// ∂/∂λ_j: term c·λ^{v+k} maps to ((v_j+k_j)·c + log-lowering)·λ^{v+k-e_j}.
// The result is complete on the window shifted by -e_j.
template <typename C>
SeriesT<C> apply_derivation(const SeriesT<C>& s, size_t j)
{
    if (j >= s.vars())
        throw std::out_of_range("apply_derivation: variable index");
    IVec shift(s.vars(), 0);
    shift[j] = -1;
    SeriesT<C> out = make_series<C>(s.base, s.window.shifted(shift));
    for (const auto& [k, c] : s.terms) {
        C d = coeff_add(coeff_scale(s.base[j] + k[j], c), coeff_log_lower(c, j));
        out.insert(ivec_add(k, shift), d);
    }
    return out;
}

// Euler operators Σ_j a_j[r] λ_j ∂_j − param[r], one result series per row
// r = 0..m.  These act termwise, so the window is unchanged.
template <typename C>
std::vector<SeriesT<C>> apply_euler(const SeriesT<C>& s, const QVec& param, const LatticeConfig& cfg)
{
    check_same_size(s.vars(), cfg.size(), "apply_euler: series/config size");
    check_same_size(param.size(), cfg.m + 1, "apply_euler: parameter size");
    std::vector<SeriesT<C>> rows;
    for (size_t r = 0; r <= cfg.m; ++r) {
        SeriesT<C> out = make_series<C>(s.base, s.window);
        for (const auto& [k, c] : s.terms) {
            Rat factor = -param[r];
            for (size_t j = 0; j < cfg.size(); ++j)
                factor += (s.base[j] + k[j]) * cfg.lifted[j][r];
            C d = coeff_scale(factor, c);
            for (size_t j = 0; j < cfg.size(); ++j)
                if (cfg.lifted[j][r] != 0)
                    d = coeff_add(d, coeff_scale(Rat(cfg.lifted[j][r]), coeff_log_lower(c, j)));
            out.insert(k, d);
        }
        rows.push_back(std::move(out));
    }
    return rows;
}

template <typename C>
std::vector<SeriesT<C>> apply_euler(const SeriesT<C>& s, const IVec& param, const LatticeConfig& cfg)
{
    return apply_euler(s, to_qvec(param), cfg);
}

// Box operator of a relation l: ∏_{l_j>0} ∂_j^{l_j} − ∏_{l_j<0} ∂_j^{-l_j}.
template <typename C>
SeriesT<C> apply_box(const SeriesT<C>& s, const IVec& l)
{
    check_same_size(l.size(), s.vars(), "apply_box");
    SeriesT<C> plus = s, minus = s;
    for (size_t j = 0; j < l.size(); ++j) {
        for (Int t = 0; t < l[j]; ++t)
            plus = apply_derivation(plus, j);
        for (Int t = 0; t < -l[j]; ++t)
            minus = apply_derivation(minus, j);
    }
    return subtract(plus, minus);
}

// Exact equality of the complete parts: term-by-term comparison on the
// intersection of the windows (after aligning bases).  Returns the common
// window alongside the verdict; an empty common window is a vacuous pass.
template <typename C>
std::pair<bool, Window> equal_on_common_window(const SeriesT<C>& a, const SeriesT<C>& b)
{
    SeriesT<C> diff = subtract(a, b);
    return {diff.is_zero(), diff.window};
}

// --- Offset enumeration -----------------------------------------------------

// All k in the window with Σ k_i a_i = u: one particular integer solution
// plus every lattice translate.  The coefficient ranges of the translates
// are bounded exactly by pushing the window through the pseudo-inverse of
// the basis matrix, so the enumeration is complete.
inline std::vector<IVec> solve_offsets(const LatticeConfig& cfg, const IVec& u,
                                       const RelationLattice& lat, const Window& window)
{
    check_same_size(u.size(), cfg.m + 1, "solve_offsets: target size");
    check_same_size(window.dims(), cfg.size(), "solve_offsets: window size");
    std::vector<IVec> coord_rows(cfg.m + 1, IVec(cfg.size()));
    for (size_t r = 0; r <= cfg.m; ++r)
        for (size_t i = 0; i < cfg.size(); ++i)
            coord_rows[r][i] = cfg.lifted[i][r];
    std::optional<IVec> part = integer_solve(coord_rows, u);
    std::vector<IVec> out;
    if (!part || window.empty())
        return out;
    const std::vector<IVec>& basis = lat.basis;
    size_t rank = basis.size();
    if (rank == 0) {
        if (window.contains(*part))
            out.push_back(*part);
        return out;
    }

    // Gram matrix G = B Bᵀ and its inverse applied to B give the rows g_t
    // with c_t = g_t · (k - k0) for any k = k0 + Σ c_t b_t.
    QMat gram(rank, QVec(rank));
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            gram[i][j] = Rat(ivec_dot(basis[i], basis[j]));
    std::vector<QVec> g(rank);
    for (size_t t = 0; t < rank; ++t) {
        QVec e(rank, Rat(0));
        e[t] = 1;
        auto x = q_solve(gram, e);
        if (!x)
            throw std::logic_error("solve_offsets: relation basis is degenerate");
        QVec row(cfg.size(), Rat(0));
        for (size_t i = 0; i < rank; ++i)
            row = qvec_add(row, qvec_scale((*x)[i], to_qvec(basis[i])));
        g[t] = std::move(row);
    }

    // Exact per-coefficient bounds of the window's preimage.
    IVec clo(rank), chi(rank);
    for (size_t t = 0; t < rank; ++t) {
        Rat mn = 0, mx = 0;
        for (size_t i = 0; i < cfg.size(); ++i) {
            Rat a = g[t][i] * (Rat(window.lo[i]) - (*part)[i]);
            Rat b = g[t][i] * (Rat(window.hi[i]) - (*part)[i]);
            mn += std::min(a, b);
            mx += std::max(a, b);
        }
        clo[t] = to_int(rat_ceil(mn));
        chi[t] = to_int(rat_floor(mx));
    }
    if (detail::box_point_count(clo, chi) > BigInt(100000000))
        throw std::runtime_error("solve_offsets: translate search space too large");
    detail::for_each_box_point(clo, chi, [&](const IVec& c) {
        IVec k = *part;
        for (size_t t = 0; t < rank; ++t)
            if (c[t] != 0)
                k = ivec_add(k, ivec_scale(c[t], basis[t]));
        if (window.contains(k))
            out.push_back(k);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- Series constructors -----------------------------------------------------

// Σ v_i a_i, the homogeneity parameter attached to an exponent vector.
inline QVec exponent_parameter(const ExponentVector& v, const LatticeConfig& cfg)
{
    check_same_size(v.size(), cfg.size(), "exponent_parameter");
    QVec beta(cfg.m + 1, Rat(0));
    for (size_t i = 0; i < cfg.size(); ++i)
        for (size_t r = 0; r <= cfg.m; ++r)
            beta[r] += v[i] * cfg.lifted[i][r];
    return beta;
}

// Σ_{Σ k_i a_i = u} [v]_k λ^{v+k}, truncated to the window.  Undefined
// brackets abort; structural zeros are dropped.
inline FormalSeries phi_series(const ExponentVector& v, const IVec& u, const LatticeConfig& cfg,
                               const RelationLattice& lat, const Window& window)
{
    check_same_size(v.size(), cfg.size(), "phi_series");
    FormalSeries s = make_series<Rat>(v, window);
    for (const IVec& k : solve_offsets(cfg, u, lat, window))
        s.insert(k, bracket_vec(v, k));
    return s;
}

// Σ_{l ∈ L, nsupp(v+l) = nsupp(v)} [v]_l λ^{v+l}: the canonical series of an
// exponent vector with minimal negative support (minimality certified within
// the default lattice search radius).
inline FormalSeries psi_mns_series(const ExponentVector& v, const LatticeConfig& cfg,
                                   const RelationLattice& lat, const Window& window,
                                   Int minimality_bound = 50)
{
    check_same_size(v.size(), cfg.size(), "psi_mns_series");
    if (!has_minimal_negative_support(v, lat, minimality_bound))
        throw std::invalid_argument("psi_mns_series: negative support is not minimal");
    std::vector<size_t> base_supp = nsupp(v);
    FormalSeries s = make_series<Rat>(v, window);
    IVec zero(cfg.m + 1, 0);
    for (const IVec& l : solve_offsets(cfg, zero, lat, window))
        if (nsupp(qvec_add(v, to_qvec(l))) == base_supp)
            s.insert(l, bracket_vec(v, l));
    return s;
}

// --- Families ---------------------------------------------------------------

struct SolutionFamily {
    IVec beta;                          // homogeneity parameter of the family
    Int degree = 0;                     // members cover all cone points of degree <= this
    std::map<IVec, FormalSeries> members;
};

// A_u = Φ_{v, −β−u} for every cone point u of degree ≤ d.  Requires the
// exponent vector to realize β exactly.
inline SolutionFamily a_family(const ExponentVector& v, const IVec& beta, const LatticeConfig& cfg,
                               const RelationLattice& lat, Int degree, const Window& window)
{
    QVec realized = exponent_parameter(v, cfg);
    if (realized != to_qvec(beta))
        throw std::invalid_argument("a_family: exponent vector does not realize the parameter");
    SolutionFamily fam;
    fam.beta = beta;
    fam.degree = degree;
    GradedLatticePoints pts = cone_sections(cfg, degree);
    for (const IVec& u : pts.points) {
        IVec target = ivec_sub(ivec_scale(-1, beta), u);
        fam.members.emplace(u, phi_series(v, target, cfg, lat, window));
    }
    return fam;
}

struct VerificationReport {
    struct Failure {
        std::string op;  // operator id, e.g. "derivation j=2 @ u=(...)"
        IVec offset;     // offending offset (empty when the whole check failed)
        Rat residual;
    };
    std::vector<Failure> failures;
    size_t checks = 0;
    Window valid_window;
    bool pass = true;
};

namespace detail {

inline void record_residuals(VerificationReport& rep, const FormalSeries& residual,
                             const std::string& op)
{
    ++rep.checks;
    for (const auto& [k, c] : residual.terms) {
        rep.failures.push_back({op, k, c});
        rep.pass = false;
    }
}

}  // namespace detail

// Exactly checks the defining identities of a solution family on its valid
// windows: ∂_j A_u = A_{u+a_j}, Euler annihilation with parameter −u, and
// box annihilation for each lattice basis vector (spot-checked on the
// lowest-degree members).
inline VerificationReport verify_K_family(const SolutionFamily& fam, const LatticeConfig& cfg,
                                          const RelationLattice& lat, const Window& window)
{
    VerificationReport rep;
    rep.valid_window = window;
    for (const auto& [u, au] : fam.members) {
        // Derivative shifts, whenever the target member is present.
        for (size_t j = 0; j < cfg.size(); ++j) {
            auto it = fam.members.find(ivec_add(u, cfg.lifted[j]));
            if (it == fam.members.end())
                continue;
            FormalSeries res = subtract(apply_derivation(au, j), it->second);
            rep.valid_window = intersect(rep.valid_window, res.window);
            detail::record_residuals(rep, res,
                                     "derivation j=" + std::to_string(j) + " @ u=" + to_string(u));
        }
        // Euler rows with parameter -u.
        auto rows = apply_euler(au, ivec_scale(-1, u), cfg);
        for (size_t r = 0; r < rows.size(); ++r)
            detail::record_residuals(rep, rows[r],
                                     "euler row=" + std::to_string(r) + " @ u=" + to_string(u));
    }
    // Box annihilation, spot-checked on the first few members.
    size_t spot = 0;
    for (const auto& [u, au] : fam.members) {
        if (spot++ >= 3)
            break;
        for (const IVec& l : lat.basis) {
            FormalSeries res = apply_box(au, l);
            rep.valid_window = intersect(rep.valid_window, res.window);
            detail::record_residuals(rep, res, "box l=" + to_string(l) + " @ u=" + to_string(u));
        }
    }
    return rep;
}

// --- Exponent vector constructions -------------------------------------------

// Solves Σ_{i∈S} v_i a_i = −u0 on an independent (m+1)-subset S with all
// entries in [−1,0]; searches subsets lexicographically when none is given.
inline ExponentVector construct_v(const LatticeConfig& cfg, const IVec& u0,
                                  std::optional<std::vector<size_t>> subset = std::nullopt)
{
    check_same_size(u0.size(), cfg.m + 1, "construct_v");
    size_t dim = cfg.m + 1;
    QVec target(dim);
    for (size_t r = 0; r < dim; ++r)
        target[r] = -u0[r];

    auto try_subset = [&](const std::vector<size_t>& idx) -> std::optional<ExponentVector> {
        QMat cols(dim, QVec(idx.size()));
        for (size_t t = 0; t < idx.size(); ++t) {
            if (idx[t] >= cfg.size())
                throw std::out_of_range("construct_v: subset index out of range");
            for (size_t r = 0; r < dim; ++r)
                cols[r][t] = cfg.lifted[idx[t]][r];
        }
        if (q_rank(cols) != idx.size())
            return std::nullopt;  // dependent subset
        auto sol = q_solve(cols, target);
        if (!sol)
            return std::nullopt;
        for (const Rat& x : *sol)
            if (x < -1 || x > 0)
                return std::nullopt;
        ExponentVector v(cfg.size(), Rat(0));
        for (size_t t = 0; t < idx.size(); ++t)
            v[idx[t]] = (*sol)[t];
        return v;
    };

    if (subset) {
        auto v = try_subset(*subset);
        if (!v)
            throw std::invalid_argument("construct_v: chosen subset admits no solution in [-1,0]");
        return *v;
    }
    std::optional<ExponentVector> found;
    detail::for_each_subset(cfg.size(), dim, [&](const std::vector<size_t>& idx) {
        if (!found)
            found = try_subset(idx);
    });
    if (!found)
        throw std::invalid_argument("construct_v: no admissible subset");
    return *found;
}

// Shift of an exponent vector with entries in (−1,0]: each negative entry
// drops by one.  Returns the shifted vector, the sum of the lifted points on
// the negative support, and the realized integral parameter.
struct ShiftResult {
    ExponentVector vprime;
    IVec u1;    // Σ_{v_i<0} a_i
    IVec beta;  // Σ v'_i a_i, integral by construction
};

inline ShiftResult thm66_shift(const ExponentVector& v, const LatticeConfig& cfg)
{
    check_same_size(v.size(), cfg.size(), "thm66_shift");
    for (const Rat& x : v)
        if (x <= -1 || x > 0)
            throw std::invalid_argument("thm66_shift: entries must lie in (-1,0]");
    ShiftResult res;
    res.vprime.assign(v.size(), Rat(0));
    res.u1.assign(cfg.m + 1, 0);
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0) {
            res.vprime[i] = v[i] - 1;
            res.u1 = ivec_add(res.u1, cfg.lifted[i]);
        }
    }
    res.beta = qvec_to_ivec(exponent_parameter(res.vprime, cfg));
    return res;
}

// --- Specialization and polynomial witnesses ---------------------------------

// Collapses a series supported on the ray {l·γ : l ≥ 0} to its univariate
// coefficient list c_0..c_K, K being the largest ray step inside the window.
inline std::vector<Rat> specialize(const FormalSeries& s, const IVec& gamma)
{
    check_same_size(gamma.size(), s.vars(), "specialize");
    if (ivec_is_zero(gamma))
        throw std::invalid_argument("specialize: zero direction");
    size_t piv = 0;
    while (gamma[piv] == 0)
        ++piv;
    Int K = -1;
    for (Int l = 0;; ++l) {
        if (!s.window.contains(ivec_scale(l, gamma)))
            break;
        K = l;
    }
    if (K < 0)
        throw std::invalid_argument("specialize: window does not contain the ray origin");
    std::vector<Rat> coeffs(static_cast<size_t>(K) + 1, Rat(0));
    for (const auto& [k, c] : s.terms) {
        if (k[piv] % gamma[piv] != 0)
            throw std::invalid_argument("specialize: support not on the ray");
        Int l = k[piv] / gamma[piv];
        if (l < 0 || k != ivec_scale(l, gamma))
            throw std::invalid_argument("specialize: support not on the ray");
        if (l <= K)
            coeffs[static_cast<size_t>(l)] = c;
    }
    return coeffs;
}

// Bivariate polynomial P(t,y) as (t-degree, y-degree, coefficient) triples.
using BivariatePoly = std::vector<std::tuple<Int, Int, Rat>>;

// True iff P(t, y(t)) ≡ 0 mod t^{K+1} for y(t) = Σ coeffs[k] t^k.
inline bool verify_polynomial_relation(const std::vector<Rat>& coeffs, const BivariatePoly& witness,
                                       Int K)
{
    if (K < 0 || static_cast<size_t>(K) + 1 > coeffs.size())
        throw std::invalid_argument("verify_polynomial_relation: K exceeds known coefficients");
    size_t n = static_cast<size_t>(K) + 1;
    auto mul = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r(n, Rat(0));
        for (size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (size_t j = 0; i + j < n; ++j)
                if (b[j] != 0)
                    r[i + j] += a[i] * b[j];
        }
        return r;
    };
    Int max_y = 0;
    for (const auto& [td, yd, c] : witness) {
        if (td < 0 || yd < 0)
            throw std::invalid_argument("verify_polynomial_relation: negative degree");
        max_y = std::max(max_y, yd);
    }
    std::vector<std::vector<Rat>> ypow;
    std::vector<Rat> one(n, Rat(0));
    one[0] = 1;
    ypow.push_back(one);
    std::vector<Rat> y(coeffs.begin(), coeffs.begin() + n);
    for (Int p = 1; p <= max_y; ++p)
        ypow.push_back(mul(ypow.back(), y));
    std::vector<Rat> acc(n, Rat(0));
    for (const auto& [td, yd, c] : witness) {
        if (c == 0 || static_cast<size_t>(td) >= n)
            continue;
        const auto& yp = ypow[static_cast<size_t>(yd)];
        for (size_t j = 0; static_cast<size_t>(td) + j < n; ++j)
            acc[static_cast<size_t>(td) + j] += c * yp[j];
    }
    for (const Rat& x : acc)
        if (x != 0)
            return false;
    return true;
}

}  // namespace hypalg
