#pragma once

#include "logdiv/fan.hpp"

#include <optional>

namespace logdiv {

/// Representative of a morphism in the category of fans localized at
/// subdivisions: an integer matrix together with a subdivision of the source
/// on which the matrix is an honest fan morphism to the target. The matrix
/// alone decides the morphism; the subdivision is a certificate.
struct DividedMorphismRep {
    Fan source;
    Subdivision source_subdivision;
    Fan target;
    IntMatrix matrix;

    bool operator==(const DividedMorphismRep& o) const {
        return source == o.source && source_subdivision.fine == o.source_subdivision.fine &&
               target == o.target && matrix == o.matrix;
    }
};

/// Builds the canonical representative (coarsest pullback subdivision) when
/// one exists, i.e. exactly when the matrix maps the source support into the
/// target support; nullopt otherwise.
std::optional<DividedMorphismRep> make_rep(const Fan& source, const Fan& target, const IntMatrix& matrix);

/// Equality in the localized category. Requires equal endpoints
/// (SourceMismatch otherwise); reduces to matrix equality.
bool eq_divided(const DividedMorphismRep& a, const DividedMorphismRep& b);

/// Composition; requires a.target == b.source (SourceMismatch otherwise).
DividedMorphismRep compose_divided(const DividedMorphismRep& a, const DividedMorphismRep& b);

/// Isomorphism test: unimodular matrix carrying the source support onto the
/// target support.
bool is_iso_divided(const DividedMorphismRep& a);

/// Inverse representative of an isomorphism. Errors: NotUnimodular,
/// SupportMismatch.
DividedMorphismRep inverse_divided(const DividedMorphismRep& a);

/// Canonical form: recomputes the coarsest pullback subdivision.
DividedMorphismRep exactify(const DividedMorphismRep& a);

/// Replaces the certificate subdivision by a finer one (must refine the
/// current certificate); the represented morphism is unchanged.
DividedMorphismRep refine_rep(const DividedMorphismRep& a, const Fan& finer);

/// Identity representative on a fan.
DividedMorphismRep identity_rep(const Fan& f);

/// A subdivision viewed as a divided morphism fine -> base with identity
/// matrix; always an isomorphism in the localized category.
DividedMorphismRep subdivision_rep(const Subdivision& sub);

} // namespace logdiv
