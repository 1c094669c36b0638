#pragma once

// JSON serialization for library values: configurations, polytopes, relation
// lattices, windows, plain and logarithmic series, and the report types.
// Rationals travel as "p/q" strings, integer vectors as plain arrays.  Field
// order is fixed (insertion-ordered documents), so equal values render to
// byte-identical text.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hypalg/factorial.hpp"
#include "hypalg/logseries.hpp"
#include "hypalg/series.hpp"

namespace hypalg {

using Json = nlohmann::ordered_json;

// Parse with the position diagnostics preserved in the message.
inline Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {

inline const Json& require_field(const Json& j, const char* key)
{
    if (!j.is_object())
        throw std::invalid_argument(std::string("expected object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace detail

// --- Vectors and rationals -------------------------------------------------------

inline Json to_json(const Rat& q) { return to_string(q); }

inline Rat rat_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rat(j.get<Int>());
    if (!j.is_string())
        throw std::invalid_argument("rational: expected \"p/q\" string");
    return parse_rational(j.get<std::string>());
}

inline Json to_json(const IVec& v) { return Json(v); }

inline IVec ivec_from_json(const Json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("integer vector: expected array");
    IVec v;
    for (const Json& x : j) {
        if (!x.is_number_integer())
            throw std::invalid_argument("integer vector: expected integer entries");
        v.push_back(x.get<Int>());
    }
    return v;
}

inline Json to_json(const QVec& v)
{
    Json a = Json::array();
    for (const Rat& x : v)
        a.push_back(to_json(x));
    return a;
}

inline QVec qvec_from_json(const Json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("rational vector: expected array");
    QVec v;
    for (const Json& x : j)
        v.push_back(rat_from_json(x));
    return v;
}

// --- Configurations and polytopes --------------------------------------------

inline Json to_json(const LatticeConfig& cfg)
{
    Json j;
    j["m"] = cfg.m;
    Json pts = Json::array();
    for (const IVec& p : cfg.points)
        pts.push_back(to_json(p));
    j["points"] = pts;
    return j;
}

inline LatticeConfig config_from_json(const Json& j)
{
    const Json& pts = detail::require_field(j, "points");
    if (!pts.is_array() || pts.empty())
        throw std::invalid_argument("field 'points': expected non-empty array");
    std::vector<IVec> points;
    for (const Json& p : pts)
        points.push_back(ivec_from_json(p));
    LatticeConfig cfg = lift_config(points);
    size_t m = detail::require_field(j, "m").get<size_t>();
    if (m != cfg.m)
        throw std::invalid_argument("field 'm' disagrees with the point dimension");
    return cfg;
}

inline Json to_json(const Facet& f)
{
    Json j;
    j["normal"] = to_json(f.normal);
    j["offset"] = f.offset;
    return j;
}

inline Facet facet_from_json(const Json& j)
{
    Facet f;
    f.normal = ivec_from_json(detail::require_field(j, "normal"));
    f.offset = detail::require_field(j, "offset").get<Int>();
    return f;
}

inline Json to_json(const HPolytope& p)
{
    Json j;
    j["dim"] = p.dim;
    Json fs = Json::array();
    for (const Facet& f : p.facets)
        fs.push_back(to_json(f));
    j["facets"] = fs;
    Json vs = Json::array();
    for (const QVec& v : p.vertices)
        vs.push_back(to_json(v));
    j["vertices"] = vs;
    Json gs = Json::array();
    for (const IVec& g : p.generators)
        gs.push_back(to_json(g));
    j["generators"] = gs;
    return j;
}

inline HPolytope polytope_from_json(const Json& j)
{
    HPolytope p;
    p.dim = detail::require_field(j, "dim").get<size_t>();
    for (const Json& f : detail::require_field(j, "facets"))
        p.facets.push_back(facet_from_json(f));
    for (const Json& v : detail::require_field(j, "vertices"))
        p.vertices.push_back(qvec_from_json(v));
    for (const Json& g : detail::require_field(j, "generators"))
        p.generators.push_back(ivec_from_json(g));
    return p;
}

inline Json to_json(const RelationLattice& lat)
{
    Json basis = Json::array();
    for (const IVec& b : lat.basis)
        basis.push_back(to_json(b));
    Json j;
    j["basis"] = basis;
    return j;
}

inline RelationLattice lattice_from_json(const Json& j)
{
    RelationLattice lat;
    for (const Json& b : detail::require_field(j, "basis"))
        lat.basis.push_back(ivec_from_json(b));
    return lat;
}

// --- Series ---------------------------------------------------------------------

inline Json to_json(const Window& w)
{
    Json j;
    j["lo"] = to_json(w.lo);
    j["hi"] = to_json(w.hi);
    return j;
}

inline Window window_from_json(const Json& j)
{
    return Window(ivec_from_json(detail::require_field(j, "lo")),
                  ivec_from_json(detail::require_field(j, "hi")));
}

inline Json to_json(const FormalSeries& s)
{
    Json j;
    j["base"] = to_json(s.base);
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms) {
        Json t;
        t["k"] = to_json(k);
        t["coeff"] = to_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = terms;
    j["window"] = to_json(s.window);
    return j;
}

inline FormalSeries series_from_json(const Json& j)
{
    FormalSeries s = make_series<Rat>(qvec_from_json(detail::require_field(j, "base")),
                                      window_from_json(detail::require_field(j, "window")));
    for (const Json& t : detail::require_field(j, "terms"))
        s.insert(ivec_from_json(detail::require_field(t, "k")),
                 rat_from_json(detail::require_field(t, "coeff")));
    return s;
}

// Log series use the same layout with one term per log monomial; "log_exps"
// holds the exponents of log λ_1..log λ_N.
inline Json to_json(const LogSeries& s)
{
    Json j;
    j["base"] = to_json(s.base);
    Json terms = Json::array();
    for (const auto& [k, poly] : s.terms)
        for (const auto& [e, c] : poly.coeffs) {
            Json t;
            t["k"] = to_json(k);
            t["log_exps"] = to_json(e);
            t["coeff"] = to_json(c);
            terms.push_back(std::move(t));
        }
    j["terms"] = terms;
    j["window"] = to_json(s.window);
    return j;
}

inline LogSeries log_series_from_json(const Json& j)
{
    LogSeries s = make_series<LogPolynomial>(qvec_from_json(detail::require_field(j, "base")),
                                             window_from_json(detail::require_field(j, "window")));
    for (const Json& t : detail::require_field(j, "terms")) {
        LogPolynomial p;
        p.add_term(ivec_from_json(detail::require_field(t, "log_exps")),
                   rat_from_json(detail::require_field(t, "coeff")));
        s.insert(ivec_from_json(detail::require_field(t, "k")), p);
    }
    return s;
}

// --- Ratio specs and reports ------------------------------------------------------

inline Json to_json(const RatioSpec& spec)
{
    Json j;
    j["alpha"] = to_json(spec.alpha);
    j["beta"] = to_json(spec.beta);
    return j;
}

inline RatioSpec ratio_spec_from_json(const Json& j)
{
    RatioSpec spec{ivec_from_json(detail::require_field(j, "alpha")),
                   ivec_from_json(detail::require_field(j, "beta"))};
    validate_ratio_spec(spec);
    return spec;
}

inline Json to_json(const VerificationReport& rep)
{
    Json j;
    j["pass"] = rep.pass;
    j["checks"] = rep.checks;
    j["valid_window"] = to_json(rep.valid_window);
    Json fails = Json::array();
    for (const auto& f : rep.failures) {
        Json e;
        e["op"] = f.op;
        e["offset"] = to_json(f.offset);
        e["residual"] = to_json(f.residual);
        fails.push_back(std::move(e));
    }
    j["failures"] = fails;
    return j;
}

inline Json to_json(const PIntegralityReport& rep)
{
    Json primes = Json::object();
    for (const auto& [p, e] : rep.per_prime) {
        Json entry;
        entry["max_denominator_valuation"] = e.max_denominator_valuation;
        entry["offender"] = e.offender ? to_json(*e.offender) : Json(nullptr);
        primes[std::to_string(p)] = std::move(entry);
    }
    Json j;
    j["clean"] = rep.clean();
    j["window"] = to_json(rep.window);
    j["primes"] = std::move(primes);
    return j;
}

inline Json to_json(const PolytopeCheck& c)
{
    Json j;
    j["integral"] = c.integral;
    j["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
    return j;
}

inline Json to_json(const DirectCheck& c)
{
    Json j;
    j["integral"] = c.integral;
    j["first_failure"] = c.first_failure;
    return j;
}

}  // namespace hypalg
