// Acceptance gate: one pass/fail line per criterion, exact arithmetic
// throughout, nonzero exit when anything fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hypalg/hypalg.hpp"
#include "test_util.hpp"

namespace {

using namespace hypalg;

// Window covering the ray steps 0..top of a rank-one direction.
Window ray_window(const IVec& gamma, Int top)
{
    IVec lo(gamma.size(), 0), hi(gamma.size(), 0);
    for (size_t i = 0; i < gamma.size(); ++i)
        (gamma[i] < 0 ? lo[i] : hi[i]) = top * gamma[i];
    return Window(lo, hi);
}

// Window covering steps -top..top.
Window sym_window(const IVec& gamma, Int top)
{
    IVec lo(gamma.size()), hi(gamma.size());
    for (size_t i = 0; i < gamma.size(); ++i) {
        Int s = top * (gamma[i] < 0 ? -gamma[i] : gamma[i]);
        lo[i] = -s;
        hi[i] = s;
    }
    return Window(lo, hi);
}

Rat central_binomial(Int l)
{
    return Rat(factorial(2 * l)) / Rat(factorial(l) * factorial(l));
}

Rat example_coeff(Int l)
{
    Rat sign = l % 2 ? -1 : 1;
    return sign * pochhammer(Rat(1, 9), 5 * l) * pochhammer(Rat(2, 3), 3 * l) *
           pochhammer(Rat(4, 9), 2 * l) /
           (pochhammer(Rat(1), 9 * l) * pochhammer(Rat(2, 9), l));
}

// --- criteria: each returns an empty string on success ---------------------------

std::string c1_example_reproduction()
{
    LatticeConfig cfg = testutil::example1_config();
    RelationLattice lat = relation_lattice(cfg);
    IVec gamma = testutil::example1_gamma();
    if (lat.basis != std::vector<IVec>{gamma})
        return "relation lattice is not generated by the expected vector";

    HPolytope hull = convex_hull_hrep(cfg.points);
    if (!interior_lattice_points(dilate(hull, 2)).empty())
        return "second dilation has interior lattice points";
    std::vector<IVec> in3 = interior_lattice_points(dilate(hull, 3));
    if (std::find(in3.begin(), in3.end(), IVec{2, 1, -1, 0, 0}) == in3.end())
        return "third dilation misses (2,1,-1,0,0)";

    QVec v = construct_v(cfg, {2, 1, -1, 0, 0, 3}, std::vector<size_t>{1, 2, 3, 4, 5, 6});
    if (v != testutil::example1_v())
        return "constructed exponent vector differs from the known one";

    FormalSeries psi = psi_mns_series(v, cfg, lat, ray_window(gamma, 10));
    if (psi.terms.size() != 11)
        return "series does not have exactly 11 ray terms";
    for (Int l = 0; l <= 10; ++l) {
        const Rat* c = psi.find(ivec_scale(l, gamma));
        if (!c || *c != example_coeff(l))
            return "coefficient at step " + std::to_string(l) + " mismatches the product formula";
    }

    FormalSeries psi30 = psi_mns_series(v, cfg, lat, ray_window(gamma, 30));
    for (const auto& [k, c] : psi30.terms) {
        BigInt den = rat_den(c);
        while (den % 3 == 0)
            den /= 3;
        if (den != 1)
            return "a denominator has a prime factor other than 3";
    }
    if (!p_integrality_report(psi30, {2, 5, 7, 11, 13}).clean())
        return "integrality scan at p in {2,5,7,11,13} is not clean up to step 30";
    return {};
}

std::string c2_system_membership()
{
    struct System {
        const char* name;
        LatticeConfig cfg;
        IVec u0;
        QVec v;
        Int top;
    };
    std::vector<System> systems;
    {
        LatticeConfig cfg = testutil::example1_config();
        systems.push_back({"seven-point", cfg, {2, 1, -1, 0, 0, 3}, testutil::example1_v(), 8});
    }
    {
        LatticeConfig cfg = ratio_config({2}, {1, 1});
        IVec u0 = {1, 0, 0, 2};
        systems.push_back({"(2;1,1)", cfg, u0, construct_v(cfg, u0), 12});
    }
    {
        LatticeConfig cfg = ratio_config({30, 1}, {15, 10, 6});
        IVec u0 = {1, 1, 0, 0, 0, 3};
        systems.push_back({"(30,1;15,10,6)", cfg, u0, construct_v(cfg, u0), 3});
    }
    for (const System& sys : systems) {
        RelationLattice lat = relation_lattice(sys.cfg);
        Window w = sym_window(lat.basis.front(), sys.top);
        FormalSeries psi = psi_mns_series(sys.v, sys.cfg, lat, w);
        if (psi.is_zero())
            return std::string(sys.name) + ": series is zero";
        for (const IVec& l : lat.basis) {
            FormalSeries res = apply_box(psi, l);
            if (res.window.empty() || !res.is_zero())
                return std::string(sys.name) + ": box residual is nonzero";
        }
        QVec param = to_qvec(ivec_scale(-1, sys.u0));
        if (exponent_parameter(sys.v, sys.cfg) != param)
            return std::string(sys.name) + ": exponent vector misses the parameter";
        for (const FormalSeries& row : apply_euler(psi, param, sys.cfg))
            if (row.window.empty() || !row.is_zero())
                return std::string(sys.name) + ": Euler residual is nonzero";
    }
    return {};
}

std::string c3_algebraicity_witness()
{
    LatticeConfig cfg = ratio_config({2}, {1, 1});
    RelationLattice lat = relation_lattice(cfg);
    IVec gamma = {-1, -2, 1, 1, 1};
    QVec v = {Rat(-1), Rat(-1), Rat(0), Rat(0), Rat(0)};
    FormalSeries psi = psi_mns_series(v, cfg, lat, ray_window(gamma, 50));
    std::vector<Rat> coeffs = specialize(psi, gamma);
    if (coeffs.size() != 51)
        return "specialization does not reach step 50";
    // The ray variable is assigned -t, absorbing the alternating sign.
    for (size_t l = 1; l < coeffs.size(); l += 2)
        coeffs[l] = -coeffs[l];
    for (Int l = 0; l <= 50; ++l)
        if (coeffs[static_cast<size_t>(l)] != central_binomial(l))
            return "coefficient " + std::to_string(l) + " is not the central binomial";
    BivariatePoly witness = {{0, 2, Rat(1)}, {1, 2, Rat(-4)}, {0, 0, Rat(-1)}};  // y²(1−4t) − 1
    if (!verify_polynomial_relation(coeffs, witness, 50))
        return "y^2(1-4t)-1 does not vanish mod t^51";
    return {};
}

std::string c4_integrality_sweep()
{
    std::vector<RatioSpec> specs = enumerate_balanced_specs(10, 2, 4);
    if (specs.size() < 400)
        return "sweep enumerates too few specs";
    for (const RatioSpec& spec : specs) {
        bool poly = classify_integrality(spec).integral;
        bool direct = direct_integrality(spec, 120).integral;
        bool landau = landau_check(spec);
        if (poly != direct || poly != landau)
            return "oracles disagree on alpha=" + to_string(spec.alpha) +
                   " beta=" + to_string(spec.beta);
    }
    return {};
}

std::string c5_shifted_family()
{
    LatticeConfig cfg = testutil::example1_config();
    RelationLattice lat = relation_lattice(cfg);
    QVec v = testutil::example1_v();
    ShiftResult sh = thm66_shift(v, cfg);
    Window w = Window::cube(7, 11);

    SolutionFamily fam = a_family(sh.vprime, sh.beta, cfg, lat, 3, w);
    VerificationReport rep = verify_K_family(fam, cfg, lat, w);
    if (!rep.pass)
        return "family verification failed with " + std::to_string(rep.failures.size()) +
               " residuals";

    Rat scalar = 1;
    for (const Rat& x : v)
        if (x < 0)
            scalar *= x;
    FormalSeries psi = psi_mns_series(v, cfg, lat, w);
    FormalSeries member = fam.members.at(IVec{2, 1, -1, 0, 0, 3});
    FormalSeries scaled = linear_combination(scalar, member, Rat(0), member);
    auto [equal, common] = equal_on_common_window(psi, rebase(scaled, v));
    if (common.empty())
        return "scalar identity has no common window";
    if (!equal)
        return "series differs from the scaled family member";
    return {};
}

std::string c6_log_machinery()
{
    // Differentiation grid for the one-variable factors.
    for (Int r = 0; r <= 3; ++r)
        for (Int k = -6; k <= 6; ++k) {
            LogPolynomial p = f_poly(r, k);
            if (f_poly(r, k - 1) != Rat(k) * p + log_derivative(p, 0))
                return "factor derivative identity fails at r=" + std::to_string(r) +
                       " k=" + std::to_string(k);
        }

    LatticeConfig cfg = ratio_config({2}, {1, 1});
    RelationLattice lat = relation_lattice(cfg);
    IVec gamma = {-1, -2, 1, 1, 1};
    IVec u0 = {1, 0, 0, 2};
    IVec mu = ivec_scale(-1, u0);
    Window w = Window::cube(5, 9);

    // Subsequence decomposition for orders up to two.
    for (const std::vector<size_t>& entries :
         {std::vector<size_t>{}, std::vector<size_t>{4}, std::vector<size_t>{0, 1},
          std::vector<size_t>{0, 0}}) {
        SequenceP P(entries, 5);
        LogSeries psi = quasisolution(P, mu, cfg, lat, w);
        LogSeries expected = make_series<LogPolynomial>(QVec(5, Rat(0)), w);
        size_t r = P.order();
        for (size_t mask = 0; mask < (size_t{1} << r); ++mask) {
            std::vector<size_t> sub;
            IVec log_exp(5, 0);
            for (size_t pos = 0; pos < r; ++pos) {
                if (mask & (size_t{1} << pos))
                    sub.push_back(P.entries[pos]);
                else
                    ++log_exp[P.entries[pos]];
            }
            FormalSeries phiq = phiQ_series(SequenceP(sub, 5), mu, cfg, lat, w);
            for (const auto& [k, c] : phiq.terms) {
                LogPolynomial mono;
                mono.add_term(log_exp, c);
                expected.insert(k, mono);
            }
        }
        if (expected != psi)
            return "decomposition mismatch for an order-" + std::to_string(r) + " sequence";
    }

    // Weighted combinations solve the full system at both parameters.
    IVec zero_u(4, 0);
    struct Combo {
        std::vector<IVec> ls;
        IVec param;
    };
    for (const Combo& c : {Combo{{gamma, gamma}, mu}, Combo{{gamma}, zero_u},
                           Combo{{gamma, gamma}, zero_u}}) {
        LogSeries sol = combine_solution(c.ls, c.param, cfg, lat, w);
        LogSeries res = apply_box(sol, gamma);
        if (res.window.empty() || !res.is_zero())
            return "combined solution fails the box operator";
        for (const LogSeries& row : apply_euler(sol, c.param, cfg))
            if (row.window.empty() || !row.is_zero())
                return "combined solution fails an Euler operator";
    }
    if (!combine_solution({gamma}, mu, cfg, lat, w).is_zero())
        return "order-one combination does not vanish at the interior parameter";

    // Closed form: equality with the principal block and with the canonical
    // series rebased to integer offsets.
    Window wc = Window::cube(5, 12);
    FormalSeries closed = closed_form_816({2}, {1, 1}, u0, wc);
    LogSeries principal = quasisolution(SequenceP({0, 1}, 5), mu, cfg, lat, wc);
    if (has_log_terms(principal))
        return "principal block carries logarithms at the interior parameter";
    if (log_free_part(principal) != closed)
        return "closed form differs from the principal block";
    QVec v = {Rat(-1), Rat(-1), Rat(0), Rat(0), Rat(0)};
    FormalSeries psi = psi_mns_series(v, cfg, lat, wc.shifted(IVec{1, 1, 0, 0, 0}));
    auto [equal, common] = equal_on_common_window(closed, rebase(psi, QVec(5, Rat(0))));
    if (common.empty() || !equal)
        return "closed form differs from the canonical series";

    // Non-rearrangement sequences vanish identically.
    if (!quasisolution(SequenceP({2, 3}, 5), mu, cfg, lat, w).is_zero())
        return "non-rearrangement quasisolution is not zero";
    return {};
}

std::string c7_orbit_certificates()
{
    LatticeConfig cfg = testutil::example1_config();
    QVec v = testutil::example1_v();
    QVec param = exponent_parameter(v, cfg);
    if (qvec_scale(Rat(-1), param) != to_qvec(IVec{2, 1, -1, 0, 0, 3}))
        return "initial parameter is not the distinguished interior point";
    for (Int p : {2, 5, 7, 11, 13})
        if (!dwork_orbit_check(v, cfg, p, 10))
            return "orbit certificate fails at p=" + std::to_string(p);
    return {};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::string (*run)();
    };
    const Criterion criteria[] = {
        {"seven-point example: lattice, dilations, canonical series", c1_example_reproduction},
        {"box and Euler annihilation on three configurations", c2_system_membership},
        {"central binomial specialization and algebraic witness", c3_algebraicity_witness},
        {"integrality oracles agree across the balanced sweep", c4_integrality_sweep},
        {"shifted solution family verifies and matches the series", c5_shifted_family},
        {"logarithmic factors, decompositions, combinations, closed form", c6_log_machinery},
        {"p-adic orbit certificates for the example exponents", c7_orbit_certificates},
    };

    int failures = 0;
    for (size_t i = 0; i < std::size(criteria); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string err;
        try {
            err = criteria[i].run();
        } catch (const std::exception& e) {
            err = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (err.empty()) {
            std::printf("PASS  %zu. %-62s (%.2f s)\n", i + 1, criteria[i].name, sec);
        } else {
            std::printf("FAIL  %zu. %-62s (%.2f s): %s\n", i + 1, criteria[i].name, sec,
                        err.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
