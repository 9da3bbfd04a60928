#pragma once

#include "logdiv/monoid.hpp"

#include <vector>

namespace logdiv {

/// Extended-Rees monoid of a monomial center: inside base^gp (+) Z it is
/// generated by (p, 0) for the base generators, the deformation coordinate
/// t = (0, 1), and (i, -1) for the ideal generators, then saturated. The
/// degree -n slice is the saturation closure of the n-th ideal power; the
/// degree +n slices are the whole base.
struct DeformationMonoid {
    FsMonoid base;
    MonoidIdeal ideal;
    Ambient total;       // ambient of the Rees monoid: base ambient (+) Z
    IntMatrix emb_base;  // base ambient coords -> total coords
    Vec t;               // the deformation coordinate in total coords
    FsMonoid rees_raw;   // before saturation, kept for inspection
    FsMonoid rees;       // saturated
    /// True when the ideal contains a unit of the base, so the center is
    /// empty and the deformation is degenerate (recorded, not an error).
    bool degenerate_center = false;
};

/// Errors: EmptyIdeal, NotSaturated (base), SourceMismatch (ideal parent).
DeformationMonoid deformation_monoid(const FsMonoid& base, const MonoidIdeal& ideal);

/// The Rees monoid with t inverted, together with the verdict of comparing
/// it against base (+) Z inside the same ambient group.
struct GenericFiber {
    FsMonoid monoid;
    FsMonoid reference;
    bool iso = false;
};

GenericFiber fiber_generic(const DeformationMonoid& d);

/// slices[n] (0 <= n <= n_max) lists the base monomials of expansion degree
/// <= deg_max lying in the n-th ideal power but not the (n+1)-st; degree is
/// the coefficient sum of the lexicographically minimal Hilbert-basis
/// expansion. Errors: InvalidArgument (bounds), NotSharp (base not sharp).
std::vector<std::vector<Vec>> fiber_zero_pieces(const DeformationMonoid& d, int n_max, int deg_max);

/// Degreewise comparison of the two descriptions of the n-th negative slice
/// for a nested pair inner <= outer of ideals: outer^n modulo inner*outer^(n-1)
/// versus outer^n modulo (outer^n intersect inner). Witnesses are monomials
/// present in the first quotient but not the second.
struct SquareCheckRow {
    int n = 0;
    bool equal = true;
    std::vector<Vec> witnesses;
};

struct SquareCheckReport {
    std::vector<SquareCheckRow> rows;
    bool all_equal = true;
};

/// Errors: NotNested (inner not contained in outer's ideal), NotSharp,
/// NotSaturated, SourceMismatch, EmptyIdeal, InvalidArgument.
SquareCheckReport deform_square_check(const FsMonoid& base, const MonoidIdeal& inner,
                                      const MonoidIdeal& outer, int n_max, int deg_max);

} // namespace logdiv
