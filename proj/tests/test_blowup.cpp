#include <doctest.h>

#include <random>
#include <tuple>

#include "logcalc/blowup.hpp"
#include "logcalc/catalog.hpp"
#include "test_util.hpp"

using namespace logcalc;
using testutil::cls;

namespace {

const CatalogEntry& entry(const std::string& name) {
    const CatalogEntry* e = find_catalog_entry(name);
    REQUIRE(e != nullptr);
    return *e;
}

// codimension-1 center: a line inside the catalog P2
CenterSpec line_in_p2() {
    const CatalogEntry& p2 = entry("P2");
    RingPresentation pres;
    pres.generators = {{"h", 2}};
    pres.relations.push_back(parse_poly("h^2", pres.generators));
    pres.truncation = 2;
    GradedRing ring = GradedRing::build(pres);
    Space line = make_space(ring, CohClass::generator(ring, 0),
                            CohClass::from_poly(ring, parse_poly("1 + 2*h", pres.generators)));
    CenterSpec c;
    c.ambient = p2.space;
    c.center = line;
    c.codim = 1;
    c.restriction = RingHom(p2.space.ring, ring, {CohClass::generator(ring, 0)});
    c.pd_center = cls(p2.space.ring, "H");
    c.normal_chern =
        make_total_chern(1, CohClass::from_poly(ring, parse_poly("1 + h", pres.generators)));
    return c;
}

// point center inside P1xP1, built the way a user would
CenterSpec point_in_p1xp1() {
    const CatalogEntry& s = entry("P1xP1");
    RingPresentation pres;
    pres.truncation = 0;
    GradedRing ring = GradedRing::build(pres);
    Space pt = make_space(ring, CohClass::unit(ring), CohClass::unit(ring));
    CenterSpec c;
    c.ambient = s.space;
    c.center = pt;
    c.codim = 2;
    c.restriction = RingHom(s.space.ring, ring, {CohClass::zero(ring), CohClass::zero(ring)});
    c.pd_center = s.space.point;
    c.normal_chern = make_total_chern(2, CohClass::unit(ring));
    c.normal_lifts = {CohClass::zero(s.space.ring)};
    return c;
}

}  // namespace

// --- sign calibration oracles ------------------------------------------------
// These pin the convention slots exceptional_pd_sign / exceptional_lift_sign /
// fiber_integration_sign. If one of them fails, the constants in blowup.hpp
// are wrong, not these tests.

TEST_CASE("calibration (a): point blowup of a surface has integral(e^2) = -1") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
    CHECK(integrate_blowup(b, b.e * b.e) == Rational(-1));
    CHECK(integrate_pullback_power(b, CohClass::unit(b.center.ambient.ring), 2) ==
          Rational(-1));
}

TEST_CASE("calibration (b): Betti decomposition of blowup rings") {
    for (const char* name : {"pt_in_P2", "pt_in_P3", "line_in_P3"}) {
        BlownUpSpace b = blow_up(standard_center(name));
        CHECK(betti_check(b).pass);
    }
    CHECK(betti_check(blow_up(standard_center("pt_in_P2"))).actual ==
          std::vector<int>{1, 2, 1});
    CHECK(betti_check(blow_up(standard_center("line_in_P3"))).actual ==
          std::vector<int>{1, 2, 2, 1});
    CHECK(betti_check(blow_up(standard_center("pt_in_P3"))).actual ==
          std::vector<int>{1, 2, 2, 1});
}

TEST_CASE("calibration (c): Euler characteristics under chern_blowup") {
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
        StrataData d = strata(*entry("P2").arrangement("twolines"));
        CHECK(integrate_blowup(b, chern_blowup(b, d)) == Rational(4));  // 3 + 1
    }
    {
        BlownUpSpace b = blow_up(standard_center("line_in_P3"));
        StrataData d = strata(*entry("P3").arrangement("twoplanes"));
        CHECK(integrate_blowup(b, chern_blowup(b, d)) == Rational(6));  // 4 + 2
    }
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P3"));
        StrataData d = strata(*entry("P3").arrangement("threeplanes"));
        CHECK(integrate_blowup(b, chern_blowup(b, d)) == Rational(6));  // 4 + 2*1
    }
}

// --- center validation ---------------------------------------------------------

TEST_CASE("catalog centers validate") {
    for (const char* name : {"pt_in_P2", "pt_in_P3", "line_in_P3"}) {
        CenterValidation v = validate_center(standard_center(name));
        CHECK(v.pass);
        CHECK(v.failures.empty());
    }
    CHECK(validate_center(line_in_p2()).pass);
    CHECK(validate_center(point_in_p1xp1()).pass);
}

TEST_CASE("center validation failures carry witnesses") {
    CenterSpec wrong_pd = standard_center("pt_in_P2");
    wrong_pd.pd_center = cls(wrong_pd.ambient.ring, "H");
    CenterValidation v = validate_center(wrong_pd);
    CHECK(!v.pass);
    REQUIRE(!v.failures.empty());
    CHECK(v.failures[0].find("degree") != std::string::npos);
    CHECK_THROWS_AS(blow_up(wrong_pd), std::invalid_argument);

    // restriction that misses the center's degree-2 classes
    CenterSpec blind = line_in_p2();
    blind.restriction =
        RingHom(blind.ambient.ring, blind.center.ring, {CohClass::zero(blind.center.ring)});
    CenterValidation v2 = validate_center(blind);
    CHECK(!v2.pass);
    bool surj = false, euler = false;
    for (const auto& f : v2.failures) {
        surj = surj || f.find("surjective in degree 2") != std::string::npos;
        euler = euler || f.find("Euler-class") != std::string::npos;
    }
    CHECK(surj);
    CHECK(euler);

    CenterSpec bad_lift = standard_center("line_in_P3");
    bad_lift.normal_lifts = {cls(bad_lift.ambient.ring, "3*H")};
    CenterValidation v3 = validate_center(bad_lift);
    CHECK(!v3.pass);
    CHECK(v3.failures[0].find("lift") != std::string::npos);
}

// --- ring construction -----------------------------------------------------------

TEST_CASE("blowup of P2 at a point: ring relations and classes") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
    const GradedRing& r = b.space.ring;
    CHECK(r.generator_count() == 2);
    CHECK(b.e_name == "e");
    CHECK(cls(r, "H*e").is_zero());
    CHECK(cls(r, "e^2") == cls(r, "-H^2"));
    CHECK(cls(r, "H^3").is_zero());
    auto rendered = rendered_relations(b);
    bool has_groth = false, has_kernel = false;
    for (const auto& s : rendered) {
        has_groth = has_groth || s == "e^2 + H^2";
        has_kernel = has_kernel || s == "H*e";
    }
    CHECK(has_groth);
    CHECK(has_kernel);
}

TEST_CASE("blowup of P3 along a line: ring relations") {
    BlownUpSpace b = blow_up(standard_center("line_in_P3"));
    const GradedRing& r = b.space.ring;
    CHECK(cls(r, "H^2*e").is_zero());
    CHECK(cls(r, "e^2") == cls(r, "2*H*e - H^2"));
    auto rendered = rendered_relations(b);
    bool has_groth = false;
    for (const auto& s : rendered) has_groth = has_groth || s == "e^2 - 2*H*e + H^2";
    CHECK(has_groth);
}

TEST_CASE("blowup of P3 at a point: ring relations") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P3"));
    const GradedRing& r = b.space.ring;
    CHECK(cls(r, "H*e").is_zero());
    CHECK(cls(r, "e^3") == cls(r, "H^3"));
}

TEST_CASE("codimension-1 center gives the identity blowup") {
    BlownUpSpace b = blow_up(line_in_p2());
    CHECK(b.e == b.pullback.apply(cls(b.center.ambient.ring, "H")));
    BettiCheck betti = betti_check(b);
    CHECK(betti.pass);
    CHECK(betti.actual == std::vector<int>{1, 1, 1});
}

// --- integration -------------------------------------------------------------------

TEST_CASE("integral of e^3 over the line blowup, two independent routes") {
    BlownUpSpace b = blow_up(standard_center("line_in_P3"));
    // route 1: closed-form fiber integration via Segre classes
    CHECK(integrate_pullback_power(b, CohClass::unit(b.center.ambient.ring), 3) ==
          Rational(-2));
    // route 2: ring reduction e^3 = 3H^2 e - 2H^3 with H^2 e = 0
    CHECK(integrate_blowup(b, b.e.pow(3)) == Rational(-2));
}

TEST_CASE("pullback preserves integrals") {
    std::mt19937_64 rng(2025);
    for (const char* name : {"pt_in_P2", "pt_in_P3", "line_in_P3"}) {
        BlownUpSpace b = blow_up(standard_center(name));
        CHECK(integrate_blowup(b, b.pullback.apply(b.center.ambient.point)) == Rational(1));
        for (int i = 0; i < 100; ++i) {
            CohClass a = testutil::random_class(b.center.ambient.ring, rng, true);
            CHECK(integrate_blowup(b, b.pullback.apply(a)) == integrate(b.center.ambient, a));
        }
        CHECK(pullback_injective(b));
    }
}

TEST_CASE("integration rule consistency on all catalog centers") {
    for (const char* name : {"pt_in_P2", "pt_in_P3", "line_in_P3"}) {
        BlownUpSpace b = blow_up(standard_center(name));
        IntegrationConsistency c = integration_rule_consistency(b);
        INFO(c.detail);
        CHECK(c.pass);
    }
    CHECK(integration_rule_consistency(blow_up(line_in_p2())).pass);
    CHECK(integration_rule_consistency(blow_up(point_in_p1xp1())).pass);
}

// --- proper transforms ----------------------------------------------------------------

TEST_CASE("proper transforms through the center become disjoint") {
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
        ProperTransform t = proper_transform(b, *entry("P2").arrangement("twolines"));
        CohClass expect = cls(b.space.ring, "H - e");
        for (const auto& v : t.transformed.classes) {
            CHECK(v == expect);
            CHECK((v * v).is_zero());
        }
    }
    {
        BlownUpSpace b = blow_up(standard_center("line_in_P3"));
        ProperTransform t = proper_transform(b, *entry("P3").arrangement("twoplanes"));
        for (const auto& v : t.transformed.classes) {
            CHECK(v == cls(b.space.ring, "H - e"));
            CHECK((v * v).is_zero());
        }
    }
}

TEST_CASE("proper-transform difference is r times the exceptional class") {
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
        Verdict v = pt_difference_check(b, *entry("P2").arrangement("twolines"));
        CHECK(v.pass);
        CHECK(v.lhs == Rational(2) * b.e);
    }
    {
        BlownUpSpace b = blow_up(standard_center("line_in_P3"));
        CHECK(pt_difference_check(b, *entry("P3").arrangement("twoplanes")).pass);
    }
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P3"));
        Verdict v = pt_difference_check(b, *entry("P3").arrangement("threeplanes"));
        CHECK(v.pass);
        CHECK(v.rhs == Rational(3) * b.e);
    }
}

TEST_CASE("transformed strata match the strata of the transformed arrangement") {
    for (auto [center, arr_entry, arr_name] :
         {std::tuple{"pt_in_P2", "P2", "twolines"},
          std::tuple{"line_in_P3", "P3", "twoplanes"},
          std::tuple{"pt_in_P3", "P3", "threeplanes"}}) {
        BlownUpSpace b = blow_up(standard_center(center));
        const SCArrangement& arr = *entry(arr_entry).arrangement(arr_name);
        StrataData direct = strata(proper_transform(b, arr).transformed);
        StrataData via_binomials = transformed_strata(b, strata(arr));
        REQUIRE(direct.depth == via_binomials.depth);
        for (int k = 1; k <= direct.depth; ++k)
            CHECK(direct.stratum(k) == via_binomials.stratum(k));
    }
}

TEST_CASE("proper transform rejects arrangements of the wrong size") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
    CHECK_THROWS_AS(proper_transform(b, *entry("P2").arrangement("toric")),
                    std::invalid_argument);
    CHECK_THROWS_AS(proper_transform(b, *entry("P2").arrangement("oneline")),
                    std::invalid_argument);
}

// --- tangent Chern classes of blowups ---------------------------------------------------

TEST_CASE("c(TX~) for the point blowup of P2") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
    StrataData d = strata(*entry("P2").arrangement("twolines"));
    CohClass ct = chern_blowup(b, d);
    CHECK(ct == cls(b.space.ring, "1 + 3*H - e + 4*H^2"));
    CHECK(ct.graded_part(2) == cls(b.space.ring, "3*H - e"));
    CHECK(integrate_blowup(b, ct.graded_part(4)) == Rational(4));
    CohClass c1 = ct.graded_part(2);
    CHECK(integrate_blowup(b, c1 * c1) == Rational(8));
}

TEST_CASE("c(TX~) for the line blowup of P3") {
    BlownUpSpace b = blow_up(standard_center("line_in_P3"));
    StrataData d = strata(*entry("P3").arrangement("twoplanes"));
    CohClass ct = chern_blowup(b, d);
    CHECK(ct.graded_part(2) == cls(b.space.ring, "4*H - e"));
    CHECK(ct.graded_part(4) == cls(b.space.ring, "7*H^2 - 4*H*e"));
    CHECK(ct.graded_part(6) == cls(b.space.ring, "6*H^3"));
    CHECK(integrate_blowup(b, ct.graded_part(6)) == Rational(6));
}

TEST_CASE("c1 of any blowup is the pullback minus (r-1) exceptional") {
    for (auto [center, arr_entry, arr_name] :
         {std::tuple{"pt_in_P2", "P2", "twolines"},
          std::tuple{"line_in_P3", "P3", "twoplanes"},
          std::tuple{"pt_in_P3", "P3", "threeplanes"}}) {
        BlownUpSpace b = blow_up(standard_center(center));
        StrataData d = strata(*entry(arr_entry).arrangement(arr_name));
        CohClass ct = chern_blowup(b, d);
        CohClass down = b.pullback.apply(b.center.ambient.tangent_chern().graded_part(2));
        CHECK(ct.graded_part(2) == down - Rational(b.center.codim - 1) * b.e);
    }
}

TEST_CASE("chern_blowup rejects strata that do not end at the center") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P3"));
    StrataData two = strata(*entry("P3").arrangement("twoplanes"));
    CHECK_THROWS_AS(chern_blowup(b, two), std::invalid_argument);
}

// --- verifier operations -------------------------------------------------------------------

TEST_CASE("blowup formula verification on the surface scenario") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
    BlowupVerification v = verify_blowup_formula(b, *entry("P2").arrangement("twolines"));
    CHECK(v.pass);
    CHECK(v.lhs_integrality.pass);
    CHECK(v.rhs_integrality.pass);
    bool saw_formula = false, saw_rederived = false;
    for (const auto& verdict : v.verdicts) {
        CHECK(verdict.pass);
        if (verdict.name == "blowup-formula") {
            saw_formula = true;
            CHECK(verdict.lhs == cls(b.space.ring, "1 + H"));
        }
        saw_rederived = saw_rederived || verdict.name == "rederived-chern";
    }
    CHECK(saw_formula);
    CHECK(saw_rederived);
}

TEST_CASE("blowup formula verification on the threefold scenario") {
    BlownUpSpace b = blow_up(standard_center("line_in_P3"));
    BlowupVerification v = verify_blowup_formula(b, *entry("P3").arrangement("twoplanes"));
    CHECK(v.pass);
    for (const auto& verdict : v.verdicts) {
        CHECK(verdict.pass);
        if (verdict.name == "blowup-formula")
            CHECK(verdict.lhs == cls(b.space.ring, "1 + 2*H + H^2"));
    }
}

TEST_CASE("blowup formula verification at codimension 3") {
    BlownUpSpace b = blow_up(standard_center("pt_in_P3"));
    BlowupVerification v = verify_blowup_formula(b, *entry("P3").arrangement("threeplanes"));
    CHECK(v.pass);
}

TEST_CASE("blowup formula verification on a product space") {
    BlownUpSpace b = blow_up(point_in_p1xp1());
    BlowupVerification v = verify_blowup_formula(b, *entry("P1xP1").arrangement("mixed"));
    CHECK(v.pass);
    CHECK(integrate_blowup(b,
                           chern_blowup(b, strata(*entry("P1xP1").arrangement("mixed")))) ==
          Rational(5));  // chi(P1xP1) + 1
}

TEST_CASE("log pullback identity") {
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P2"));
        Verdict v = log_pullback_check(b, *entry("P2").arrangement("twolines"));
        CHECK(v.pass);
        CHECK(v.lhs == cls(b.space.ring, "1 + H"));
    }
    {
        BlownUpSpace b = blow_up(standard_center("line_in_P3"));
        Verdict v = log_pullback_check(b, *entry("P3").arrangement("twoplanes"));
        CHECK(v.pass);
        CHECK(v.lhs == cls(b.space.ring, "1 + 2*H + H^2"));
    }
    {
        BlownUpSpace b = blow_up(standard_center("pt_in_P3"));
        CHECK(log_pullback_check(b, *entry("P3").arrangement("threeplanes")).pass);
    }
    {
        // degenerate divisor blowup with an empty arrangement
        BlownUpSpace b = blow_up(line_in_p2());
        SCArrangement empty = make_arrangement(b.center.ambient, {}, {});
        Verdict v = log_pullback_check(b, empty);
        CHECK(v.pass);
        CHECK(v.lhs == b.pullback.apply(b.center.ambient.tangent_chern()));
        // and with the divisor itself: both sides c(TX)/(1+H)
        SCArrangement self =
            make_arrangement(b.center.ambient, {"Y"}, {cls(b.center.ambient.ring, "H")});
        CHECK(log_pullback_check(b, self).pass);
    }
}

TEST_CASE("blowup results are coefficient-integral") {
    BlownUpSpace b = blow_up(standard_center("line_in_P3"));
    StrataData d = strata(*entry("P3").arrangement("twoplanes"));
    CHECK(integrality_check(chern_blowup(b, d)).pass);
    CHECK(integrality_check(b.e.pow(3)).pass);
}
