#pragma once

#include "logdiv/bigint.hpp"
#include "logdiv/matrix.hpp"

#include <vector>

namespace logdiv {

/// Generators of a (possibly non-pointed) rational polyhedral cone, split
/// into extreme rays modulo the lineality space and a lattice basis of the
/// lineality space. Rays are primitive and lex-sorted; for a pointed cone
/// `lineality` is empty and `rays` is exactly the set of extreme rays.
struct ConeGenerators {
    std::vector<Vec> rays;
    std::vector<Vec> lineality;
};

/// Generators of the dual cone {y : <y,g> >= 0 for all g in gens} inside
/// Z^dim. Exact; enumerates candidate facet normals from (rank-1)-subsets
/// of gens. Intended for dim <= 4 at desk scale.
ConeGenerators dual_generators(const std::vector<Vec>& gens, int dim);

/// Inequality/equation description of a cone {x : ineqs . x >= 0, eqs . x = 0}.
struct ConeConstraints {
    std::vector<Vec> ineqs;
    std::vector<Vec> eqs;
    int dim = 0;

    bool contains(const Vec& x) const;
};

/// Generators of the cone cut out by the constraints (extreme rays modulo
/// lineality plus a lineality basis), again exact via double dualization.
ConeGenerators generators_from_constraints(const ConeConstraints& c);

/// Constraint description of cone(gens): facet inequalities are the extreme
/// rays of the dual, equations a basis of the orthogonal complement of the
/// linear span.
ConeConstraints constraints_from_generators(const std::vector<Vec>& gens, int dim);

/// Hilbert basis of the pointed cone cone(rays) intersected with Z^dim.
/// `rays` must be the extreme rays of a pointed cone. Enumerates the lattice
/// points of the zonotope bounding box and filters indecomposables in order
/// of a strictly positive grading; unique, returned lex-sorted.
std::vector<Vec> hilbert_basis_pointed(const std::vector<Vec>& rays, int dim);

/// Generator data for the full lattice monoid C intersect Z^dim of a cone C
/// given by constraints: a lattice basis of the unit group (lineality
/// lattice) plus Hilbert-basis lifts for the pointed quotient. The monoid is
/// generated by the lifts together with +-units.
struct SaturatedGenerators {
    std::vector<Vec> units;    // basis of (lineality of C) intersect Z^dim
    std::vector<Vec> hilbert;  // lifts inside C, one per Hilbert basis element of C/lineality
};

SaturatedGenerators saturated_generators_for_cone(const ConeConstraints& c);

/// Canonical cleanup: primitive parts, dedupe, lex sort, drop zero vectors.
std::vector<Vec> canonical_ray_set(std::vector<Vec> rays);

} // namespace logdiv
