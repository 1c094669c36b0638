// hypalg — command-line frontend.
//
// Subcommands: polytope, series, logsolve, ratio (check | sweep), sweep.
// Reports are JSON (or markdown with --markdown), deterministic down to the
// byte for identical inputs.  Exit code 0 only when every requested
// verification passes; runtime errors exit with 2.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hypalg/hypalg.hpp"

namespace {

using namespace hypalg;

// --- plumbing ---------------------------------------------------------------

Json read_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

bool is_prime(Int p)
{
    if (p < 2)
        return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// Worker cap: number of tasks, hardware threads, and HYPALG_THREADS if set.
size_t worker_count(size_t tasks)
{
    size_t n = std::thread::hardware_concurrency();
    if (n == 0)
        n = 1;
    if (const char* env = std::getenv("HYPALG_THREADS")) {
        long cap = std::atol(env);
        if (cap >= 1)
            n = std::min(n, static_cast<size_t>(cap));
    }
    return std::max<size_t>(1, std::min(n, tasks));
}

// Generic markdown rendering: scalars as bullets, arrays of flat objects as
// tables, everything else as fenced JSON.
std::string render_markdown(const Json& rep)
{
    std::ostringstream os;
    os << "# hypalg " << rep.value("command", "report") << "\n";
    for (const auto& [key, val] : rep.items()) {
        if (key == "command")
            continue;
        if (val.is_primitive()) {
            os << "- **" << key << "**: " << val.dump() << "\n";
            continue;
        }
        os << "\n## " << key << "\n\n";
        bool table = val.is_array() && !val.empty() && val[0].is_object() && !val[0].empty();
        if (table)
            for (const Json& row : val)
                if (!row.is_object() || row.size() != val[0].size())
                    table = false;
        if (table) {
            std::string header = "|", rule = "|";
            for (const auto& [k, v] : val[0].items()) {
                header += " " + k + " |";
                rule += " --- |";
            }
            os << header << "\n" << rule << "\n";
            for (const Json& row : val) {
                os << "|";
                for (const auto& [k, v] : row.items())
                    os << " " << v.dump() << " |";
                os << "\n";
            }
        } else {
            os << "```json\n" << val.dump(2) << "\n```\n";
        }
    }
    return os.str();
}

struct OutputOpts {
    std::string out;
    bool markdown = false;
};

void emit(const Json& rep, const OutputOpts& o)
{
    std::string text = o.markdown ? render_markdown(rep) : rep.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f)
        throw std::runtime_error("cannot open output file: " + o.out);
    f << text;
}

// --- shared pipeline pieces ----------------------------------------------------

void record_residuals(VerificationReport& rep, const FormalSeries& res, const std::string& op)
{
    ++rep.checks;
    rep.valid_window = intersect(rep.valid_window, res.window);
    for (const auto& [k, c] : res.terms) {
        rep.failures.push_back({op, k, c});
        rep.pass = false;
    }
}

// Box and Euler residuals of a claimed solution at the given parameter.
VerificationReport verify_series_solution(const FormalSeries& s, const QVec& param,
                                          const LatticeConfig& cfg, const RelationLattice& lat)
{
    VerificationReport rep;
    rep.valid_window = s.window;
    auto rows = apply_euler(s, param, cfg);
    for (size_t r = 0; r < rows.size(); ++r)
        record_residuals(rep, rows[r], "euler row=" + std::to_string(r));
    for (const IVec& l : lat.basis)
        record_residuals(rep, apply_box(s, l), "box l=" + to_string(l));
    return rep;
}

// The distinguished interior point a_0 + ... + a_n of a ratio configuration.
IVec ratio_u0(const RatioSpec& spec)
{
    IVec u0(spec.m() + 1, 0);
    for (size_t i = 0; i < spec.n(); ++i)
        u0[i] = 1;
    u0[spec.m()] = static_cast<Int>(spec.n()) + 1;
    return u0;
}

// Configuration from an input document: either {"alpha","beta"} or
// {"m","points"}.
LatticeConfig config_from_input(const Json& in, std::optional<RatioSpec>& spec)
{
    if (in.is_object() && in.contains("alpha")) {
        spec = ratio_spec_from_json(in);
        return ratio_config(spec->alpha, spec->beta);
    }
    return config_from_json(in);
}

Window window_from_input(const Json& in, const LatticeConfig& cfg, Int radius)
{
    if (in.is_object() && in.contains("window"))
        return window_from_json(in["window"]);
    return Window::cube(cfg.size(), radius);
}

// --- commands ---------------------------------------------------------------

int cmd_polytope(const Json& in, Int degree, const OutputOpts& o)
{
    LatticeConfig cfg = config_from_json(in);
    HPolytope hull = convex_hull_hrep(cfg.points);
    Json dil = Json::array();
    for (Int k = 1; k <= degree; ++k) {
        std::vector<IVec> inside = interior_lattice_points(dilate(hull, k));
        Json d;
        d["factor"] = k;
        d["interior_count"] = inside.size();
        d["witness"] = inside.empty() ? Json(nullptr) : to_json(inside.front());
        dil.push_back(std::move(d));
    }
    Json rep;
    rep["command"] = "polytope";
    rep["config"] = to_json(cfg);
    rep["hull"] = to_json(hull);
    rep["degree"] = degree;
    rep["dilations"] = std::move(dil);
    emit(rep, o);
    return 0;
}

int cmd_series(const Json& in, Int radius, Int degree, const std::vector<Int>& primes,
               const OutputOpts& o)
{
    std::optional<RatioSpec> spec;
    LatticeConfig cfg = config_from_input(in, spec);
    RelationLattice lat = relation_lattice(cfg);

    ExponentVector v;
    if (in.contains("v")) {
        v = qvec_from_json(in["v"]);
    } else {
        IVec u0 = in.contains("u") ? ivec_from_json(in["u"])
                                   : (spec ? ratio_u0(*spec)
                                           : throw std::invalid_argument(
                                                 "series: input needs 'v' or 'u'"));
        std::optional<std::vector<size_t>> subset;
        if (in.contains("subset")) {
            subset.emplace();
            for (Int i : ivec_from_json(in["subset"]))
                subset->push_back(static_cast<size_t>(i));
        }
        v = construct_v(cfg, u0, subset);
    }

    Window w = window_from_input(in, cfg, radius);
    FormalSeries psi = psi_mns_series(v, cfg, lat, w);
    QVec param = exponent_parameter(v, cfg);
    VerificationReport ver = verify_series_solution(psi, param, cfg, lat);
    bool pass = ver.pass;

    Json rep;
    rep["command"] = "series";
    rep["config"] = to_json(cfg);
    if (spec)
        rep["spec"] = to_json(*spec);
    rep["v"] = to_json(v);
    rep["parameter"] = to_json(param);
    rep["window"] = to_json(w);
    rep["series"] = to_json(psi);
    rep["verification"] = to_json(ver);

    // Solution family anchored at the realized parameter, when integral.
    rep["family"] = Json(nullptr);
    if (qvec_is_integral(param)) {
        SolutionFamily fam = a_family(v, qvec_to_ivec(param), cfg, lat, degree, w);
        VerificationReport fver = verify_K_family(fam, cfg, lat, w);
        Json fj = to_json(fver);
        fj["degree"] = degree;
        fj["members"] = fam.members.size();
        rep["family"] = std::move(fj);
        pass = pass && fver.pass;
    }

    // Univariate coefficients along the lattice ray, when there is one.
    rep["specialization"] = Json(nullptr);
    if (lat.rank() == 1) {
        for (const IVec& dir : {lat.basis[0], ivec_scale(-1, lat.basis[0])}) {
            try {
                rep["specialization"] = to_json(QVec(specialize(psi, dir)));
                break;
            } catch (const std::invalid_argument&) {
            }
        }
    }

    rep["p_integrality"] = Json(nullptr);
    if (!primes.empty())
        rep["p_integrality"] = to_json(p_integrality_report(psi, primes));

    rep["pass"] = pass;
    emit(rep, o);
    return pass ? 0 : 1;
}

int cmd_logsolve(const Json& in, Int radius, const OutputOpts& o)
{
    std::optional<RatioSpec> spec;
    LatticeConfig cfg = config_from_input(in, spec);
    RelationLattice lat = relation_lattice(cfg);
    if (lat.basis.empty())
        throw std::invalid_argument("logsolve: configuration has no relations");

    IVec u = in.contains("u")
                 ? ivec_from_json(in["u"])
                 : (spec ? ratio_u0(*spec)
                         : throw std::invalid_argument("logsolve: input needs 'u'"));
    Window w = window_from_input(in, cfg, radius);
    IVec mu = ivec_scale(-1, u);  // solution parameter

    std::vector<std::vector<size_t>> seqs;
    if (in.contains("sequences")) {
        for (const Json& s : in["sequences"]) {
            std::vector<size_t> p;
            for (Int i : ivec_from_json(s))
                p.push_back(static_cast<size_t>(i));
            seqs.push_back(std::move(p));
        }
    } else {
        std::vector<size_t> p0;
        for (size_t i = 0; i < (spec ? spec->n() + 1 : 1); ++i)
            p0.push_back(i);
        seqs.push_back(std::move(p0));
    }

    bool pass = true;
    Json qs = Json::array();
    for (const auto& P : seqs) {
        LogSeries q = quasisolution(SequenceP(P, cfg.size()), mu, cfg, lat, w);
        bool box_pass = true;
        for (const IVec& l : lat.basis)
            box_pass = box_pass && apply_box(q, l).is_zero();
        Json e;
        e["P"] = Json(P);
        e["order"] = P.size();
        e["zero"] = q.is_zero();
        e["log_free"] = !has_log_terms(q);
        e["terms"] = q.terms.size();
        e["box_pass"] = box_pass;
        qs.push_back(std::move(e));
        pass = pass && box_pass;
    }

    Json comb(nullptr);
    Int order = in.contains("order") ? in["order"].get<Int>() : 0;
    if (order > 0) {
        std::vector<IVec> ls;
        if (in.contains("relations"))
            for (const Json& l : in["relations"])
                ls.push_back(ivec_from_json(l));
        else
            ls.assign(static_cast<size_t>(order), lat.basis[0]);
        LogSeries c = combine_solution(ls, mu, cfg, lat, w);
        bool euler_pass = true;
        for (const LogSeries& row : apply_euler(c, mu, cfg))
            euler_pass = euler_pass && row.is_zero();
        bool box_pass = true;
        for (const IVec& l : lat.basis)
            box_pass = box_pass && apply_box(c, l).is_zero();
        comb = Json::object();
        comb["order"] = ls.size();
        Json rel = Json::array();
        for (const IVec& l : ls)
            rel.push_back(to_json(l));
        comb["relations"] = std::move(rel);
        comb["zero"] = c.is_zero();
        comb["has_logs"] = has_log_terms(c);
        comb["box_pass"] = box_pass;
        comb["euler_pass"] = euler_pass;
        pass = pass && box_pass && euler_pass;
    }

    // Interior-parameter closed form versus the principal block.
    Json cf(nullptr);
    if (spec && spec->m() > 2 * spec->n() && cone_hrep(cfg).interior(u)) {
        FormalSeries closed = closed_form_816(spec->alpha, spec->beta, u, w);
        std::vector<size_t> p0;
        for (size_t i = 0; i <= spec->n(); ++i)
            p0.push_back(i);
        LogSeries principal = quasisolution(SequenceP(p0, cfg.size()), mu, cfg, lat, w);
        bool matches = !has_log_terms(principal) && log_free_part(principal) == closed;
        cf = Json::object();
        cf["matches_principal_block"] = matches;
        cf["series"] = to_json(closed);
        pass = pass && matches;
    }

    Json rep;
    rep["command"] = "logsolve";
    rep["config"] = to_json(cfg);
    if (spec)
        rep["spec"] = to_json(*spec);
    rep["u"] = to_json(u);
    rep["window"] = to_json(w);
    rep["quasisolutions"] = std::move(qs);
    rep["combination"] = std::move(comb);
    rep["closed_form"] = std::move(cf);
    rep["pass"] = pass;
    emit(rep, o);
    return pass ? 0 : 1;
}

// One spec through all three oracles.
Json oracle_row(const RatioSpec& spec, Int direct_bound)
{
    PolytopeCheck poly = classify_integrality(spec);
    DirectCheck direct = direct_integrality(spec, direct_bound);
    bool landau = landau_check(spec);
    bool agree = poly.integral == direct.integral && poly.integral == landau;
    Json j;
    j["spec"] = to_json(spec);
    j["integral"] = poly.integral;
    j["algebraic_regime"] = spec.m() == 2 * spec.n() + 1;
    j["witness"] = poly.witness ? to_json(*poly.witness) : Json(nullptr);
    Json oracles;
    oracles["polytope"] = to_json(poly);
    Json dj = to_json(direct);
    dj["bound"] = direct_bound;
    oracles["direct"] = std::move(dj);
    oracles["landau"] = landau;
    j["oracles"] = std::move(oracles);
    j["agree"] = agree;
    return j;
}

int cmd_ratio_check(const IVec& alpha, const IVec& beta, Int direct_bound, const OutputOpts& o)
{
    RatioSpec spec{alpha, beta};
    validate_ratio_spec(spec);
    Json rep = oracle_row(spec, direct_bound);
    Json full;
    full["command"] = "ratio check";
    for (auto& [k, v] : rep.items())
        full[k] = v;
    emit(full, o);
    return full["agree"] == true ? 0 : 1;
}

int cmd_ratio_sweep(Int max_sum, Int max_n, Int max_mn, Int direct_bound, const OutputOpts& o)
{
    std::vector<RatioSpec> specs =
        enumerate_balanced_specs(max_sum, static_cast<size_t>(max_n), static_cast<size_t>(max_mn));
    std::vector<Json> rows(specs.size());

    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < specs.size(); i = next.fetch_add(1))
            rows[i] = oracle_row(specs[i], direct_bound);
    };
    std::vector<std::thread> pool;
    for (size_t t = worker_count(specs.size()); t > 1; --t)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();

    size_t integral = 0;
    Json results = Json::array(), disagreements = Json::array();
    for (const Json& r : rows) {
        if (r["integral"] == true)
            ++integral;
        if (r["agree"] != true)
            disagreements.push_back(r);
        Json row;
        row["alpha"] = r["spec"]["alpha"];
        row["beta"] = r["spec"]["beta"];
        for (const char* k : {"integral", "algebraic_regime", "agree"})
            row[k] = r[k];
        results.push_back(std::move(row));
    }

    Json rep;
    rep["command"] = "ratio sweep";
    Json bounds;
    bounds["max_sum"] = max_sum;
    bounds["max_n"] = max_n;
    bounds["max_mn"] = max_mn;
    bounds["direct_bound"] = direct_bound;
    rep["bounds"] = std::move(bounds);
    rep["count"] = specs.size();
    rep["integral_count"] = integral;
    rep["agree"] = disagreements.empty();
    rep["disagreements"] = std::move(disagreements);
    rep["results"] = std::move(results);
    emit(rep, o);
    return disagreements.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact toolkit for lattice configurations, hypergeometric series, and "
                 "factorial-ratio integrality"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputOpts out;
    app.add_option("--out", out.out, "Write the report to this file instead of stdout");
    app.add_flag("--markdown", out.markdown, "Render the report as markdown");
    std::string input;
    Int radius = 10, degree = 3, direct_bound = 120;
    std::vector<Int> primes;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Input JSON file")->required()->check(CLI::ExistingFile);
    };

    CLI::App* polytope = app.add_subcommand("polytope", "Convex hull, facets, dilation scan");
    add_input(polytope);
    polytope->add_option("--degree", degree, "Largest dilation factor")->check(CLI::PositiveNumber);

    CLI::App* series = app.add_subcommand("series", "Canonical series solution with verification");
    add_input(series);
    series->add_option("--window", radius, "Cube window radius")->check(CLI::PositiveNumber);
    series->add_option("--degree", degree, "Family degree bound")->check(CLI::PositiveNumber);
    series->add_option("--primes", primes, "Primes for the integrality scan")->delimiter(',');

    CLI::App* logsolve = app.add_subcommand("logsolve", "Logarithmic quasisolutions and combinations");
    add_input(logsolve);
    logsolve->add_option("--window", radius, "Cube window radius")->check(CLI::PositiveNumber);

    CLI::App* ratio = app.add_subcommand("ratio", "Factorial-ratio integrality");
    ratio->require_subcommand(1);
    IVec alpha, beta;
    CLI::App* check = ratio->add_subcommand("check", "Run all three oracles on one spec");
    check->add_option("--alpha", alpha, "Numerator entries")->required()->delimiter(',');
    check->add_option("--beta", beta, "Denominator entries")->required()->delimiter(',');
    check->add_option("--k", direct_bound, "Direct-evaluation bound")->check(CLI::PositiveNumber);

    Int max_sum = 6, max_n = 2, max_mn = 4;
    auto add_sweep_opts = [&](CLI::App* sub) {
        sub->add_option("--max-sum", max_sum, "Largest entry sum")->check(CLI::PositiveNumber);
        sub->add_option("--max-n", max_n, "Most numerator entries")->check(CLI::PositiveNumber);
        sub->add_option("--max-mn", max_mn, "Most denominator entries")->check(CLI::PositiveNumber);
        sub->add_option("--k", direct_bound, "Direct-evaluation bound")->check(CLI::PositiveNumber);
    };
    CLI::App* rsweep = ratio->add_subcommand("sweep", "Oracle agreement over all balanced specs");
    add_sweep_opts(rsweep);
    CLI::App* sweep = app.add_subcommand("sweep", "Alias for ratio sweep");
    add_sweep_opts(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        for (Int p : primes)
            if (!is_prime(p))
                throw std::invalid_argument("--primes: " + std::to_string(p) + " is not prime");
        if (polytope->parsed())
            return cmd_polytope(read_input(input), degree, out);
        if (series->parsed())
            return cmd_series(read_input(input), radius, degree, primes, out);
        if (logsolve->parsed())
            return cmd_logsolve(read_input(input), radius, out);
        if (check->parsed())
            return cmd_ratio_check(alpha, beta, direct_bound, out);
        if (rsweep->parsed() || sweep->parsed())
            return cmd_ratio_sweep(max_sum, max_n, max_mn, direct_bound, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
