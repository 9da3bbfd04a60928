#include "logdiv/divided.hpp"

namespace logdiv {

std::optional<DividedMorphismRep> make_rep(const Fan& source, const Fan& target, const IntMatrix& matrix) {
    if (matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank())
        throw DomainError("ShapeMismatch", "matrix must be target rank x source rank");
    std::vector<Cone> all;
    for (const Cone& delta : source.max_cones()) {
        std::vector<Cone> pieces;
        for (const Cone& sig : target.max_cones()) pieces.push_back(preimage_intersect(delta, matrix, sig));
        if (!subfan_covers_cone(pieces, delta)) return std::nullopt;
        all.insert(all.end(), pieces.begin(), pieces.end());
    }
    Fan fine(source.ambient_rank(), maximal_pieces(std::move(all)));
    if (!is_subdivision(fine, source))
        throw DomainError("InternalInvariant", "pullback pieces did not assemble into a subdivision");
    make_fan_morphism(fine, target, matrix); // validates conewise mapping
    return DividedMorphismRep{source, Subdivision{source, std::move(fine)}, target, matrix};
}

bool eq_divided(const DividedMorphismRep& a, const DividedMorphismRep& b) {
    if (!(a.source == b.source) || !(a.target == b.target))
        throw DomainError("SourceMismatch", "divided morphisms with different endpoints are incomparable");
    return a.matrix == b.matrix;
}

DividedMorphismRep compose_divided(const DividedMorphismRep& a, const DividedMorphismRep& b) {
    if (!(a.target == b.source))
        throw DomainError("SourceMismatch", "composition requires a.target == b.source");
    std::optional<DividedMorphismRep> r = make_rep(a.source, b.target, mul(b.matrix, a.matrix));
    if (!r)
        throw DomainError("InternalInvariant", "composite of valid divided morphisms lost support containment");
    return *r;
}

bool is_iso_divided(const DividedMorphismRep& a) {
    if (!is_unimodular(a.matrix)) return false;
    std::vector<Cone> image;
    for (const Cone& delta : a.source.max_cones()) {
        std::vector<Vec> gens;
        for (const Vec& r : delta.rays()) gens.push_back(mat_apply(a.matrix, r));
        image.push_back(Cone::from_generators(a.target.ambient_rank(), gens));
    }
    Fan image_fan(a.target.ambient_rank(), maximal_pieces(std::move(image)));
    return supports_equal(image_fan, a.target);
}

DividedMorphismRep inverse_divided(const DividedMorphismRep& a) {
    if (!is_unimodular(a.matrix))
        throw DomainError("NotUnimodular", "divided morphism is invertible only for unimodular matrices");
    std::optional<DividedMorphismRep> r = make_rep(a.target, a.source, inverse_unimodular(a.matrix));
    if (!r)
        throw DomainError("SupportMismatch", "matrix does not carry the source support onto the target support");
    return *r;
}

DividedMorphismRep exactify(const DividedMorphismRep& a) {
    std::optional<DividedMorphismRep> r = make_rep(a.source, a.target, a.matrix);
    if (!r) throw DomainError("InternalInvariant", "valid divided morphism failed support containment");
    return *r;
}

DividedMorphismRep refine_rep(const DividedMorphismRep& a, const Fan& finer) {
    if (!is_subdivision(finer, a.source_subdivision.fine))
        throw DomainError("NotSubdivision", "refinement must subdivide the current certificate");
    Subdivision sub = make_subdivision(a.source, finer);
    make_fan_morphism(sub.fine, a.target, a.matrix); // still an honest fan morphism
    return DividedMorphismRep{a.source, std::move(sub), a.target, a.matrix};
}

DividedMorphismRep identity_rep(const Fan& f) {
    std::optional<DividedMorphismRep> r = make_rep(f, f, IntMatrix::identity(f.ambient_rank()));
    if (!r) throw DomainError("InternalInvariant", "identity failed support containment");
    return *r;
}

DividedMorphismRep subdivision_rep(const Subdivision& sub) {
    std::optional<DividedMorphismRep> r =
        make_rep(sub.fine, sub.base, IntMatrix::identity(sub.base.ambient_rank()));
    if (!r) throw DomainError("InternalInvariant", "subdivision failed support containment");
    return *r;
}

} // namespace logdiv
