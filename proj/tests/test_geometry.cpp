#include "support.hpp"

#include <doctest.h>

using namespace logdiv;
using namespace logdiv::testsupport;

TEST_CASE("dual generators of frozen cones") {
    SUBCASE("dual of the first quadrant is the first quadrant") {
        ConeGenerators d = dual_generators(vecs({{1, 0}, {0, 1}}), 2);
        CHECK(d.lineality.empty());
        CHECK(d.rays == vecs({{0, 1}, {1, 0}}));
    }
    SUBCASE("dual of cone(e1, e1+2e2)") {
        ConeGenerators d = dual_generators(vecs({{1, 0}, {1, 2}}), 2);
        CHECK(d.lineality.empty());
        CHECK(d.rays == vecs({{0, 1}, {2, -1}}));
    }
    SUBCASE("dual of a single ray is a half plane") {
        ConeGenerators d = dual_generators(vecs({{1, 0}}), 2);
        CHECK(d.lineality.size() == 1);
        CHECK(d.rays.size() == 1);
        CHECK(d.rays[0] == vl({1, 0}));
        CHECK(abs_int(d.lineality[0][1]) == 1);
    }
    SUBCASE("dual of the zero cone is everything") {
        ConeGenerators d = dual_generators({}, 2);
        CHECK(d.rays.empty());
        CHECK(d.lineality.size() == 2);
    }
}

TEST_CASE("constraints and generators round-trip") {
    SUBCASE("first quadrant") {
        ConeConstraints cc = constraints_from_generators(vecs({{1, 0}, {0, 1}}), 2);
        CHECK(cc.eqs.empty());
        ConeGenerators cg = generators_from_constraints(cc);
        CHECK(cg.rays == vecs({{0, 1}, {1, 0}}));
        CHECK(cg.lineality.empty());
    }
    SUBCASE("a ray has one equation in the plane") {
        ConeConstraints cc = constraints_from_generators(vecs({{1, 2}}), 2);
        CHECK(cc.eqs.size() == 1);
        CHECK(cc.contains(vl({2, 4})));
        CHECK(!cc.contains(vl({-1, -2})));
        CHECK(!cc.contains(vl({1, 1})));
        ConeGenerators cg = generators_from_constraints(cc);
        CHECK(cg.rays == vecs({{1, 2}}));
    }
    SUBCASE("half plane keeps its lineality") {
        ConeConstraints cc;
        cc.dim = 2;
        cc.ineqs = {vl({0, 1})};
        ConeGenerators cg = generators_from_constraints(cc);
        CHECK(cg.lineality.size() == 1);
        CHECK(cg.rays.size() == 1);
        CHECK(cg.rays[0][1] > 0);
    }
    SUBCASE("wide cone spanning two quadrants") {
        ConeConstraints cc = constraints_from_generators(vecs({{-1, 2}, {1, 0}}), 2);
        ConeGenerators cg = generators_from_constraints(cc);
        CHECK(cg.rays == vecs({{-1, 2}, {1, 0}}));
        CHECK(cc.contains(vl({0, 1})));
        CHECK(!cc.contains(vl({0, -1})));
    }
}

TEST_CASE("pointed hilbert bases") {
    SUBCASE("first quadrant") {
        CHECK(hilbert_basis_pointed(vecs({{1, 0}, {0, 1}}), 2) == vecs({{0, 1}, {1, 0}}));
    }
    SUBCASE("cone(e2, 2e1-e2) needs the interior point e1") {
        std::vector<Vec> hb = hilbert_basis_pointed(vecs({{0, 1}, {2, -1}}), 2);
        CHECK(hb == vecs({{0, 1}, {1, 0}, {2, -1}}));
    }
    SUBCASE("cone(e1, e1+3e2) has two interior generators") {
        std::vector<Vec> hb = hilbert_basis_pointed(vecs({{1, 0}, {1, 3}}), 2);
        CHECK(hb == vecs({{1, 0}, {1, 1}, {1, 2}, {1, 3}}));
    }
    SUBCASE("three-dimensional simplicial cone") {
        std::vector<Vec> hb = hilbert_basis_pointed(vecs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}), 3);
        CHECK(std::find(hb.begin(), hb.end(), vl({1, 1, 1})) != hb.end());
        for (const Vec& h : hb) {
            bool expressible = nonneg_combo(h, {vl({1, 0, 0}), vl({0, 1, 0}), vl({1, 1, 2})});
            if (h == vl({1, 1, 1})) CHECK(!expressible);
        }
    }
}

TEST_CASE("saturated generators for a constrained cone") {
    ConeConstraints cc;
    cc.dim = 2;
    cc.ineqs = {vl({1, 0}), vl({0, 1})};
    SaturatedGenerators sg = saturated_generators_for_cone(cc);
    CHECK(sg.hilbert == vecs({{0, 1}, {1, 0}}));
    CHECK(sg.units.empty());
}

TEST_CASE("canonical ray set dedupes and rescales") {
    std::vector<Vec> rays = canonical_ray_set(vecs({{2, 0}, {1, 0}, {0, 3}}));
    CHECK(rays == vecs({{0, 1}, {1, 0}}));
}
