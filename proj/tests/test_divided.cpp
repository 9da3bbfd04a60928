#include "support.hpp"

#include <doctest.h>

using namespace logdiv;
using namespace logdiv::testsupport;

TEST_CASE("representatives exist exactly when supports map in") {
    Fan a2 = a2_fan();
    Fan h = halfplane_fan();
    SUBCASE("identity into the same fan needs no subdivision") {
        auto r = make_rep(a2, a2, IntMatrix::identity(2));
        REQUIRE(r.has_value());
        CHECK(r->source_subdivision.fine == a2);
    }
    SUBCASE("a shear keeps the quadrant inside itself") {
        auto r = make_rep(a2, a2, mat({{1, 1}, {0, 1}}));
        REQUIRE(r.has_value());
        CHECK(r->source_subdivision.fine == a2);
    }
    SUBCASE("mapping the quadrant out of the target fails") {
        CHECK(!make_rep(a2, a2, mat({{1, 0}, {-1, 1}})).has_value());
        CHECK(!make_rep(h, a2, IntMatrix::identity(2)).has_value());
    }
    SUBCASE("a finer target forces a certificate subdivision") {
        auto r = make_rep(a2, star11(), IntMatrix::identity(2));
        REQUIRE(r.has_value());
        CHECK(r->source_subdivision.fine == star11());
    }
    SUBCASE("swapping the two quadrants of the half plane") {
        auto r = make_rep(h, h, mat({{-1, 0}, {0, 1}}));
        REQUIRE(r.has_value());
        CHECK(r->source_subdivision.fine == h);
    }
}

TEST_CASE("equality ignores the certificate") {
    Fan a2 = a2_fan();
    auto r = make_rep(a2, a2, mat({{1, 1}, {0, 1}}));
    REQUIRE(r.has_value());
    DividedMorphismRep finer = refine_rep(*r, star11());
    CHECK(finer.source_subdivision.fine != r->source_subdivision.fine);
    CHECK(eq_divided(*r, finer));
    CHECK(eq_divided(finer, *r));
    auto other = make_rep(a2, a2, IntMatrix::identity(2));
    CHECK(!eq_divided(*r, *other));
    SUBCASE("endpoint mismatch is an error, not inequality") {
        auto into_h = make_rep(a2, halfplane_fan(), IntMatrix::identity(2));
        CHECK_THROWS_AS(eq_divided(*r, *into_h), DomainError);
    }
    SUBCASE("refinement must refine the existing certificate") {
        CHECK_THROWS_AS(refine_rep(*r, halfplane_fan()), DomainError);
    }
}

TEST_CASE("composition multiplies matrices and recertifies") {
    Fan a2 = a2_fan();
    Fan s = star11();
    auto f = make_rep(a2, s, IntMatrix::identity(2));
    auto g = make_rep(s, a2, mat({{1, 1}, {1, 2}}));
    REQUIRE(f.has_value());
    REQUIRE(g.has_value());
    DividedMorphismRep gf = compose_divided(*f, *g);
    CHECK(gf.source == a2);
    CHECK(gf.target == a2);
    CHECK(gf.matrix == mat({{1, 1}, {1, 2}}));
    SUBCASE("identity laws") {
        CHECK(eq_divided(compose_divided(identity_rep(a2), gf), gf));
        CHECK(eq_divided(compose_divided(gf, identity_rep(a2)), gf));
    }
    SUBCASE("mismatched middle fans are refused") {
        CHECK_THROWS_AS(compose_divided(*g, *g), DomainError);
    }
}

TEST_CASE("subdivisions become isomorphisms") {
    Subdivision sub = make_subdivision(a2_fan(), star11());
    DividedMorphismRep r = subdivision_rep(sub);
    CHECK(r.source == star11());
    CHECK(r.target == a2_fan());
    CHECK(is_iso_divided(r));
    DividedMorphismRep inv = inverse_divided(r);
    CHECK(eq_divided(compose_divided(r, inv), identity_rep(star11())));
    CHECK(eq_divided(compose_divided(inv, r), identity_rep(a2_fan())));
}

TEST_CASE("isomorphism requires a unimodular support match") {
    Fan a2 = a2_fan();
    auto shear = make_rep(a2, a2, mat({{1, 1}, {0, 1}}));
    REQUIRE(shear.has_value());
    CHECK(!is_iso_divided(*shear));  // unimodular but the image cone is smaller
    auto dbl = make_rep(a2, a2, mat({{2, 0}, {0, 1}}));
    REQUIRE(dbl.has_value());
    CHECK(!is_iso_divided(*dbl));  // support matches but not unimodular
    CHECK_THROWS_AS(inverse_divided(*dbl), DomainError);
    auto swap = make_rep(a2, a2, mat({{0, 1}, {1, 0}}));
    REQUIRE(swap.has_value());
    CHECK(is_iso_divided(*swap));
    CHECK(eq_divided(compose_divided(*swap, inverse_divided(*swap)), identity_rep(a2)));
}

TEST_CASE("exactify restores the canonical certificate") {
    Fan a2 = a2_fan();
    auto r = make_rep(a2, a2, IntMatrix::identity(2));
    REQUIRE(r.has_value());
    DividedMorphismRep fat = refine_rep(*r, star11());
    DividedMorphismRep canon = exactify(fat);
    CHECK(canon.source_subdivision.fine == a2);
    CHECK(canon == *r);
}
