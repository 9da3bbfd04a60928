#include "support.hpp"

#include <doctest.h>

using namespace logdiv;
using namespace logdiv::testsupport;

TEST_CASE("smith normal form on frozen examples") {
    SUBCASE("diag(2,3) has invariants 1,6") {
        SmithDecomposition d = snf(mat({{2, 0}, {0, 3}}));
        CHECK(d.invariants() == std::vector<Int>{Int(1), Int(6)});
        CHECK(d.rank() == 2);
    }
    SUBCASE("a full-rank 2x2 with determinant -2") {
        SmithDecomposition d = snf(mat({{1, 2}, {3, 4}}));
        CHECK(d.invariants() == std::vector<Int>{Int(1), Int(2)});
    }
    SUBCASE("decomposition identity left*m*right = diag") {
        IntMatrix m = mat({{4, 6, 2}, {2, 2, 0}});
        SmithDecomposition d = snf(m);
        CHECK(mul(mul(d.left, m), d.right) == d.diag);
        CHECK(is_unimodular(d.left));
        CHECK(is_unimodular(d.right));
        for (int i = 0; i + 1 < std::min(d.diag.rows(), d.diag.cols()); ++i) {
            if (d.diag.at(i + 1, i + 1) != 0) {
                CHECK(d.diag.at(i + 1, i + 1) % d.diag.at(i, i) == 0);
            }
        }
    }
}

TEST_CASE("kernel and lattice saturation") {
    SUBCASE("kernel of the sum covector") {
        IntMatrix k = kernel_basis(mat({{1, 1}}));
        CHECK(k.cols() == 1);
        Vec b = k.col(0);
        CHECK(b[0] + b[1] == 0);
        CHECK(abs_int(b[0]) == 1);
    }
    SUBCASE("kernel of an injective matrix is trivial") {
        CHECK(kernel_basis(mat({{1, 0}, {0, 1}, {1, 1}})).cols() == 0);
    }
    SUBCASE("saturation of the index-two sublattice <(1,1),(1,-1)> is Z^2") {
        IntMatrix s = saturate_sublattice(IntMatrix::from_columns(2, vecs({{1, 1}, {1, -1}})));
        CHECK(s.cols() == 2);
        CHECK(in_column_lattice(s, vl({1, 0})));
        CHECK(in_column_lattice(s, vl({0, 1})));
    }
    SUBCASE("membership in a column lattice") {
        IntMatrix b = IntMatrix::from_columns(2, vecs({{2, 0}, {0, 3}}));
        CHECK(in_column_lattice(b, vl({4, 3})));
        CHECK(!in_column_lattice(b, vl({1, 0})));
        CHECK(!in_column_lattice(b, vl({2, 2})));
    }
}

TEST_CASE("determinant, unimodularity, inverse") {
    CHECK(determinant(mat({{3, 1}, {1, 3}})) == 8);
    CHECK(determinant(mat({{1, 1}, {1, 1}})) == 0);
    CHECK(determinant(mat({{2, 0, 1}, {1, 1, 0}, {0, 3, 1}})) == 5);
    IntMatrix u = mat({{2, 1}, {1, 1}});
    CHECK(is_unimodular(u));
    CHECK(mul(u, inverse_unimodular(u)).is_identity());
    CHECK(mul(inverse_unimodular(u), u).is_identity());
    CHECK(!is_unimodular(mat({{2, 0}, {0, 1}})));
    CHECK_THROWS_AS(inverse_unimodular(mat({{2, 0}, {0, 1}})), DomainError);
}

TEST_CASE("random unimodular products invert exactly") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 2), coef(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix u = IntMatrix::identity(3);
        for (int s = 0; s < 6; ++s) {
            int kind = pick(rng);
            int i = pick(rng), j = pick(rng);
            if (kind == 0 && i != j) u.swap_rows(i, j);
            if (kind == 1) u.negate_row(i);
            if (kind == 2 && i != j) u.add_row_multiple(i, j, Int(coef(rng)));
        }
        CHECK(is_unimodular(u));
        CHECK(mul(u, inverse_unimodular(u)).is_identity());
    }
}

TEST_CASE("linear solve over the integers") {
    SUBCASE("solvable system") {
        std::optional<Vec> x = solve(mat({{2, 1}, {0, 1}}), vl({5, 1}));
        REQUIRE(x.has_value());
        CHECK(*x == vl({2, 1}));
    }
    SUBCASE("integrally unsolvable system") {
        CHECK(!solve(mat({{2, 0}, {0, 2}}), vl({1, 0})).has_value());
    }
    SUBCASE("underdetermined but solvable") {
        std::optional<Vec> x = solve(mat({{1, 1, 1}}), vl({3}));
        REQUIRE(x.has_value());
        CHECK((*x)[0] + (*x)[1] + (*x)[2] == 3);
    }
}

TEST_CASE("hermite form spans the same column lattice") {
    IntMatrix m = IntMatrix::from_columns(2, vecs({{2, 0}, {3, 3}, {1, 1}}));
    IntMatrix h = hnf(m);
    CHECK(lattice_rank(h) == lattice_rank(m));
    for (int j = 0; j < m.cols(); ++j) CHECK(in_column_lattice(h, m.col(j)));
    for (int j = 0; j < h.cols(); ++j) CHECK(in_column_lattice(m, h.col(j)));
}
