#include <doctest.h>

#include "logcalc/catalog.hpp"
#include "test_util.hpp"

using namespace logcalc;
using testutil::cls;

TEST_CASE("projective spaces") {
    Space p1 = projective_space(1);
    CHECK(*p1.ctx == cls(p1.ring, "1 + 2*H"));
    CHECK(integrate(p1, p1.ctx->graded_part(2)) == Rational(2));

    Space p2 = projective_space(2);
    CHECK(integrate(p2, p2.ctx->graded_part(4)) == Rational(3));

    Space p3 = projective_space(3);
    CHECK(integrate(p3, p3.ctx->graded_part(6)) == Rational(4));

    CHECK_THROWS_AS(projective_space(0), std::invalid_argument);
    CHECK_THROWS_AS(projective_space(7), std::invalid_argument);
}

TEST_CASE("product spaces") {
    Space p1a = projective_space(1), p1b = projective_space(1);
    Space p1xp1 = product_space(p1a, p1b);
    CHECK(p1xp1.n == 2);
    CHECK(p1xp1.ring.generator_count() == 2);
    CHECK(p1xp1.ring.presentation().generators[1].name == "H_2");
    CHECK(integrate(p1xp1, p1xp1.ctx->graded_part(4)) == Rational(4));

    Space p1xp2 = product_space(projective_space(1), projective_space(2));
    CHECK(integrate(p1xp2, p1xp2.ctx->graded_part(6)) == Rational(6));

    CHECK_THROWS_AS(product_space(projective_space(4), projective_space(3)),
                    std::invalid_argument);

    // product with a point changes nothing
    RingPresentation pt_pres;
    pt_pres.truncation = 0;
    GradedRing pt_ring = GradedRing::build(pt_pres);
    Space pt = make_space(pt_ring, CohClass::unit(pt_ring), CohClass::unit(pt_ring));
    Space p1xpt = product_space(projective_space(1), pt);
    CHECK(p1xpt.n == 1);
    CHECK(p1xpt.ring.basis_dim(2) == 1);
    CHECK(integrate(p1xpt, p1xpt.ctx->graded_part(2)) == Rational(2));
}

TEST_CASE("coordinate arrangements") {
    Space p2 = projective_space(2);
    CHECK(coordinate_arrangement(p2, 3).size() == 3);
    CHECK(coordinate_arrangement(p2, 0).size() == 0);
    CHECK_THROWS_AS(coordinate_arrangement(p2, 4), std::invalid_argument);

    Space p3 = projective_space(3);
    SCArrangement two = coordinate_arrangement(p3, 2);
    CHECK(line_bundle_c1(two) == cls(p3.ring, "2*H"));

    Space prod = product_space(projective_space(1), projective_space(1));
    CHECK_THROWS_AS(coordinate_arrangement(prod, 1), std::invalid_argument);
}

TEST_CASE("standard centers resolve and validate") {
    for (const char* name : {"pt_in_P2", "pt_in_P3", "line_in_P3"})
        CHECK(validate_center(standard_center(name)).pass);
    CHECK_THROWS_AS(standard_center("pt_in_P5"), std::invalid_argument);
}

TEST_CASE("every catalog entry satisfies the space invariants") {
    for (const auto& e : builtin_catalog()) {
        INFO(e.name);
        CHECK(e.space.ring.basis_dim(2 * e.space.n) == 1);
        CHECK(integrate(e.space, e.space.point) == Rational(1));
        CHECK(integrate(e.space, e.space.tangent_chern()) == Rational(e.euler));
    }
}

TEST_CASE("every catalog arrangement reconstructs its strata product") {
    for (const auto& e : builtin_catalog()) {
        for (const auto& [name, arr] : e.arrangements) {
            INFO(e.name << ":" << name);
            CohClass prod = CohClass::unit(e.space.ring);
            for (const auto& v : arr.classes) prod = prod * (CohClass::unit(e.space.ring) + v);
            CHECK(strata_total(strata(arr)) == prod);
            CHECK(log_chern(e.space, strata(arr)) * strata_total(strata(arr)) ==
                  e.space.tangent_chern());
        }
    }
}

TEST_CASE("toric boundaries have trivial log tangent Chern class") {
    for (const char* name : {"P1", "P2", "P3", "P4", "P1xP1", "P1xP2"}) {
        const CatalogEntry* e = find_catalog_entry(name);
        REQUIRE(e != nullptr);
        const SCArrangement* toric = e->arrangement("toric");
        REQUIRE(toric != nullptr);
        CHECK(log_chern(e->space, strata(*toric)) == CohClass::unit(e->space.ring));
    }
}

TEST_CASE("catalog lookups") {
    CHECK(find_catalog_entry("P2") != nullptr);
    CHECK(find_catalog_entry("P9") == nullptr);
    CHECK(find_catalog_entry("P3")->strata_input("nc_direct") != nullptr);
    CHECK(find_catalog_entry("P3")->center("line_in_P3") != nullptr);
    CHECK(find_catalog_entry("P3")->center("nope") == nullptr);
}
