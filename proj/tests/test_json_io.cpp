#include <catch2/catch_amalgamated.hpp>

#include "hypalg/json_io.hpp"
#include "test_util.hpp"

using namespace hypalg;

TEST_CASE("rational and vector round trips")
{
    for (const char* s : {"0", "5", "-7", "2/3", "-11/9"}) {
        Rat q = parse_rational(s);
        REQUIRE(to_json(q) == Json(s));
        REQUIRE(rat_from_json(to_json(q)) == q);
    }
    REQUIRE(rat_from_json(Json(4)) == 4);  // plain integers are accepted on input
    REQUIRE_THROWS_AS(rat_from_json(Json(1.5)), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_from_json(parse_json_text("\"2//3\"")), std::invalid_argument);

    IVec k{3, -1, 0};
    REQUIRE(ivec_from_json(to_json(k)) == k);
    REQUIRE_THROWS_AS(ivec_from_json(parse_json_text("[1, \"x\"]")), std::invalid_argument);
    REQUIRE_THROWS_AS(ivec_from_json(Json::object()), std::invalid_argument);

    QVec v{Rat(1, 2), Rat(-3), Rat(0)};
    REQUIRE(to_json(v).dump() == "[\"1/2\",\"-3\",\"0\"]");
    REQUIRE(qvec_from_json(to_json(v)) == v);
}

TEST_CASE("malformed documents carry diagnostics")
{
    REQUIRE_THROWS_WITH(parse_json_text("{\"m\": 2,"),
                        Catch::Matchers::ContainsSubstring("malformed JSON"));
    REQUIRE_THROWS_WITH(config_from_json(parse_json_text("{\"m\": 2}")),
                        Catch::Matchers::ContainsSubstring("missing field 'points'"));
    REQUIRE_THROWS_WITH(config_from_json(parse_json_text("[1,2]")),
                        Catch::Matchers::ContainsSubstring("'points'"));
}

TEST_CASE("configuration round trip")
{
    LatticeConfig cfg = testutil::example1_config();
    Json j = to_json(cfg);
    REQUIRE(j["m"] == 5);
    REQUIRE(j["points"].size() == 7);
    REQUIRE(config_from_json(j) == cfg);

    Json bad = j;
    bad["m"] = 4;
    REQUIRE_THROWS_WITH(config_from_json(bad), Catch::Matchers::ContainsSubstring("'m'"));
    // lift_config validation applies on input
    Json dup = j;
    dup["points"].push_back(dup["points"][0]);
    REQUIRE_THROWS_AS(config_from_json(dup), std::invalid_argument);
}

TEST_CASE("polytope and lattice round trips")
{
    LatticeConfig cfg = ratio_config({2}, {1, 1});
    HPolytope hull = convex_hull_hrep(cfg.points);
    REQUIRE(polytope_from_json(to_json(hull)) == hull);
    Json j = to_json(hull);
    REQUIRE(j["facets"][0].contains("normal"));
    REQUIRE(j["facets"][0].contains("offset"));
    REQUIRE(j["vertices"][0].is_array());

    RelationLattice lat = relation_lattice(cfg);
    REQUIRE(lattice_from_json(to_json(lat)) == lat);
    REQUIRE(to_json(lat)["basis"][0] == Json(IVec{-1, -2, 1, 1, 1}));
}

TEST_CASE("series round trip")
{
    LatticeConfig cfg = testutil::example1_config();
    RelationLattice lat = relation_lattice(cfg);
    IVec gamma = testutil::example1_gamma();
    IVec lo(7, 0), hi(7, 0);
    for (size_t i = 0; i < 7; ++i)
        (gamma[i] < 0 ? lo[i] : hi[i]) = 4 * gamma[i];
    FormalSeries psi = psi_mns_series(testutil::example1_v(), cfg, lat, Window(lo, hi));

    Json j = to_json(psi);
    REQUIRE(j["terms"].size() == psi.terms.size());
    REQUIRE(j["terms"][0].contains("k"));
    REQUIRE(j["terms"][0].contains("coeff"));
    REQUIRE(series_from_json(j) == psi);

    // Equal values render byte-identically.
    FormalSeries again = psi_mns_series(testutil::example1_v(), cfg, lat, Window(lo, hi));
    REQUIRE(to_json(again).dump(2) == j.dump(2));
}

TEST_CASE("log series round trip")
{
    LatticeConfig cfg = ratio_config({2}, {1, 1});
    RelationLattice lat = relation_lattice(cfg);
    IVec u{-1, 0, 0, -2};
    Window w = Window::cube(5, 8);
    LogSeries q = quasisolution(SequenceP({0, 1}, 5), u, cfg, lat, w);
    REQUIRE_FALSE(q.is_zero());

    Json j = to_json(q);
    REQUIRE(log_series_from_json(j) == q);
    for (const Json& t : j["terms"])
        REQUIRE(t["log_exps"].size() == 5);

    // A log-free series has all-zero log_exps entries.
    LogSeries zero_order = quasisolution(SequenceP({}, 5), IVec{0, 0, 0, 0}, cfg, lat, w);
    Json jz = to_json(zero_order);
    REQUIRE(jz["terms"].size() == 1);
    REQUIRE(jz["terms"][0]["log_exps"] == Json(IVec(5, 0)));
}

TEST_CASE("ratio specs and reports")
{
    RatioSpec spec{{6, 1}, {3, 2, 2}};
    REQUIRE(ratio_spec_from_json(to_json(spec)) == spec);
    REQUIRE_THROWS_AS(ratio_spec_from_json(parse_json_text("{\"alpha\":[2],\"beta\":[1]}")),
                      std::invalid_argument);

    Json poly = to_json(classify_integrality(RatioSpec{{1, 1}, {2}}));
    REQUIRE(poly["integral"] == false);
    REQUIRE(poly["witness"] == Json(IVec{1, 1, -1}));
    REQUIRE(to_json(classify_integrality(spec))["witness"].is_null());

    Json direct = to_json(direct_integrality(RatioSpec{{1, 1}, {2}}, 5));
    REQUIRE(direct["integral"] == false);
    REQUIRE(direct["first_failure"] == 1);

    LatticeConfig cfg = testutil::example1_config();
    RelationLattice lat = relation_lattice(cfg);
    QVec v = testutil::example1_v();
    IVec gamma = testutil::example1_gamma();
    IVec lo(7, 0), hi(7, 0);
    for (size_t i = 0; i < 7; ++i)
        (gamma[i] < 0 ? lo[i] : hi[i]) = 5 * gamma[i];
    FormalSeries psi = psi_mns_series(v, cfg, lat, Window(lo, hi));

    Json scan = to_json(p_integrality_report(psi, {2, 3, 5}));
    REQUIRE(scan["clean"] == false);
    REQUIRE(scan["primes"]["2"]["max_denominator_valuation"] == 0);
    REQUIRE(scan["primes"]["2"]["offender"].is_null());
    REQUIRE(scan["primes"]["3"]["max_denominator_valuation"] > 0);
    REQUIRE(scan["primes"]["3"]["offender"].is_array());

    SolutionFamily fam = a_family(v, IVec{-2, -1, 1, 0, 0, -3}, cfg, lat, 3, Window(lo, hi));
    Json rep = to_json(verify_K_family(fam, cfg, lat, Window(lo, hi)));
    REQUIRE(rep["pass"] == true);
    REQUIRE(rep["checks"].get<size_t>() > 0);
    REQUIRE(rep["failures"].empty());
}
