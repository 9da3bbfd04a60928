#include "support.hpp"

#include <doctest.h>

using namespace logdiv;
using namespace logdiv::testsupport;

TEST_CASE("cone construction and faces") {
    Cone q = Cone::from_rays(2, vecs({{0, 1}, {1, 0}}));
    CHECK(q.dim() == 2);
    CHECK(q.contains(vl({3, 5})));
    CHECK(!q.contains(vl({-1, 0})));
    CHECK(q.contains_relint(vl({1, 1})));
    CHECK(!q.contains_relint(vl({1, 0})));

    std::vector<Cone> faces = q.faces();
    CHECK(faces.size() == 4);  // 0, two rays, the cone
    std::vector<Cone> facets = q.facets();
    CHECK(facets.size() == 2);
    for (const Cone& f : facets) CHECK(f.is_face_of(q));

    SUBCASE("non-reduced ray lists are rejected") {
        CHECK_THROWS_AS(Cone::from_rays(2, vecs({{2, 0}, {0, 1}})), DomainError);
        CHECK_THROWS_AS(Cone::from_rays(2, vecs({{1, 0}, {0, 1}, {1, 1}})), DomainError);
    }
    SUBCASE("a line is not strongly convex") {
        CHECK_THROWS_AS(Cone::from_generators(2, vecs({{1, 0}, {-1, 0}})), DomainError);
    }
    SUBCASE("intersection of neighbouring cones is their common face") {
        Cone left = Cone::from_rays(2, vecs({{-1, 0}, {0, 1}}));
        Cone meet = q.intersect(left);
        CHECK(meet.dim() == 1);
        CHECK(meet.rays() == vecs({{0, 1}}));
        CHECK(meet.is_face_of(q));
        CHECK(meet.is_face_of(left));
    }
}

TEST_CASE("fan axioms are enforced") {
    CHECK(a2_fan().max_cones().size() == 1);
    CHECK(halfplane_fan().max_cones().size() == 2);
    SUBCASE("overlapping cones are rejected") {
        CHECK_THROWS_AS(Fan(2, {Cone::from_rays(2, vecs({{0, 1}, {1, 0}})),
                                Cone::from_rays(2, vecs({{1, 0}, {1, 2}}))}),
                        DomainError);
    }
    SUBCASE("a cone contained in another is rejected") {
        CHECK_THROWS_AS(Fan(2, {Cone::from_rays(2, vecs({{0, 1}, {1, 0}})),
                                Cone::from_rays(2, vecs({{1, 1}, {1, 0}}))}),
                        DomainError);
    }
    SUBCASE("validation verdicts without exceptions") {
        CHECK(validate_fan_data(2, {vecs({{0, 1}, {1, 0}})}).ok);
        FanValidation bad = validate_fan_data(2, {vecs({{0, 1}, {1, 0}}), vecs({{1, 0}, {1, 2}})});
        CHECK(!bad.ok);
        CHECK(!bad.message.empty());
    }
    SUBCASE("find_cone locates the smallest containing cone") {
        Fan h = halfplane_fan();
        CHECK(h.contains_point(vl({-2, 1})));
        CHECK(!h.contains_point(vl({0, -1})));
        auto c = h.find_cone(vl({2, 1}));
        REQUIRE(c.has_value());
        CHECK(c->rays() == vecs({{0, 1}, {1, 0}}));
        auto boundary = h.find_cone(vl({0, 1}));
        REQUIRE(boundary.has_value());
        CHECK(boundary->dim() == 1);
    }
}

TEST_CASE("star subdivision") {
    SUBCASE("at the diagonal of the quadrant") {
        Fan s = star11();
        REQUIRE(s.max_cones().size() == 2);
        CHECK(s.max_cones()[0].rays() == vecs({{0, 1}, {1, 1}}));
        CHECK(s.max_cones()[1].rays() == vecs({{1, 0}, {1, 1}}));
        CHECK(is_subdivision(s, a2_fan()));
    }
    SUBCASE("at an interior ray of one cone of a bigger fan") {
        Fan h = halfplane_fan();
        Fan s = star_subdivision(h, vl({1, 2}));
        REQUIRE(s.max_cones().size() == 3);
        CHECK(is_subdivision(s, h));
        // the untouched left quadrant survives
        CHECK(std::any_of(s.max_cones().begin(), s.max_cones().end(),
                          [&](const Cone& c) { return c.rays() == vecs({{-1, 0}, {0, 1}}); }));
    }
    SUBCASE("at an existing ray it is a no-op") {
        CHECK(star_subdivision(a2_fan(), vl({1, 0})) == a2_fan());
        CHECK(star_subdivision(star11(), vl({1, 1})) == star11());
    }
    SUBCASE("rejects non-primitive or outside rays") {
        CHECK_THROWS_AS(star_subdivision(a2_fan(), vl({2, 2})), DomainError);
        CHECK_THROWS_AS(star_subdivision(a2_fan(), vl({-1, 1})), DomainError);
    }
}

TEST_CASE("subdivision recognition") {
    Fan base = a2_fan();
    CHECK(is_subdivision(base, base));
    CHECK(is_subdivision(star11(), base));
    CHECK(!is_subdivision(base, star11()));  // coarsening is not a subdivision
    CHECK(!is_subdivision(halfplane_fan(), base));  // support differs
    Subdivision sub = make_subdivision(base, star11());
    CHECK(sub.base == base);
    CHECK_THROWS_AS(make_subdivision(star11(), halfplane_fan()), DomainError);
}

TEST_CASE("common refinement") {
    Fan s1 = star11();
    Fan s2 = star_subdivision(a2_fan(), vl({1, 2}));
    Fan r = common_refinement(s1, s2);
    CHECK(is_subdivision(r, s1));
    CHECK(is_subdivision(r, s2));
    CHECK(r.max_cones().size() == 3);
    SUBCASE("refining with itself changes nothing") {
        CHECK(common_refinement(s1, s1) == s1);
        CHECK(common_refinement(a2_fan(), a2_fan()) == a2_fan());
    }
    SUBCASE("mismatched supports are refused") {
        CHECK_THROWS_AS(common_refinement(a2_fan(), halfplane_fan()), DomainError);
    }
}

TEST_CASE("fan morphisms and pullback of subdivisions") {
    Fan a2 = a2_fan();
    Fan h = halfplane_fan();
    FanMorphism inc = make_fan_morphism(a2, h, IntMatrix::identity(2));
    SUBCASE("a matrix that breaks cone-wise compatibility is rejected") {
        CHECK_THROWS_AS(make_fan_morphism(h, a2, IntMatrix::identity(2)), DomainError);
    }
    SUBCASE("pulling back a star subdivision of the target") {
        Subdivision tsub = make_subdivision(h, star_subdivision(h, vl({1, 1})));
        Subdivision pulled = pullback_subdivision(inc, tsub);
        CHECK(pulled.base == a2);
        CHECK(pulled.fine == star11());
    }
    SUBCASE("pulling back along a projection-like map") {
        Fan line = line_fan();
        // (x, y) -> x maps both upper quadrants onto the fan of the line? No:
        // the left quadrant maps to the negative axis, which is missing.
        CHECK_THROWS_AS(make_fan_morphism(h, line, mat({{1, 0}})), DomainError);
        FanMorphism proj = make_fan_morphism(a2, line, mat({{1, 0}}));
        Subdivision trivial = make_subdivision(line, line);
        CHECK(pullback_subdivision(proj, trivial).fine == a2);
    }
}

TEST_CASE("chart monoid of a cone is the dual monoid") {
    SUBCASE("quadrant gives the free monoid") {
        FsMonoid m = cone_monoid(a2_fan().max_cones()[0]);
        CHECK(m.is_sharp());
        CHECK(m.is_saturated());
        CHECK(m.hilbert() == vecs({{0, 1}, {1, 0}}));
    }
    SUBCASE("singular quadric cone monoid") {
        Cone c = Cone::from_rays(2, vecs({{1, 0}, {1, 2}}));
        FsMonoid m = cone_monoid(c);
        CHECK(m.hilbert() == vecs({{0, 1}, {1, 0}, {2, -1}}));
    }
    SUBCASE("a ray in the plane has units in its chart monoid") {
        Cone c = Cone::from_rays(2, vecs({{1, 0}}));
        FsMonoid m = cone_monoid(c);
        CHECK(!m.is_sharp());
        // both signs: the unit group is generated as a monoid
        CHECK(m.unit_generators().size() == 2);
        CHECK(m.contains(vl({0, 1})));
        CHECK(m.contains(vl({0, -1})));
        CHECK(!m.contains(vl({-1, 0})));
    }
}
