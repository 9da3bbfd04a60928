#pragma once

#include "logdiv/bigint.hpp"
#include "logdiv/errors.hpp"
#include "logdiv/geometry.hpp"
#include "logdiv/matrix.hpp"

#include <optional>
#include <vector>

namespace logdiv {

/// Ambient abelian group Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_k. Elements
/// are integer vectors of length free_rank + k with the torsion coordinates
/// kept reduced into [0, d_i). Internally everything is lifted to the free
/// lattice Z^(free_rank + k) with relation vectors d_i e_{free_rank + i}.
struct Ambient {
    int free_rank = 0;
    std::vector<Int> torsion;  // moduli, each >= 2

    int coords() const { return free_rank + int(torsion.size()); }
    bool operator==(const Ambient& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    bool operator!=(const Ambient& o) const { return !(*this == o); }

    void normalize(Vec& v) const;
    Vec normalized(Vec v) const;
    Vec free_part(const Vec& v) const;
    bool is_zero_class(const Vec& v) const;

    /// Lifted relation vectors d_i e_{free_rank + i}, as columns.
    std::vector<Vec> relation_gens() const;
};

/// Coordinates for the quotient of an ambient group by a finitely generated
/// subgroup (computed via Smith normal form; free coordinates first, then
/// torsion in divisibility order). projection * section = identity.
struct GroupQuotient {
    Ambient quotient;
    IntMatrix projection;  // source coords -> quotient coords
    IntMatrix section;     // quotient coords -> source coords
};

GroupQuotient quotient_by_subgroup(const Ambient& a, const std::vector<Vec>& subgroup_gens);

struct DirectSum {
    Ambient sum;
    IntMatrix emb1, emb2;  // coordinate embeddings of the two summands
};

DirectSum direct_sum(const Ambient& a, const Ambient& b);

/// Largest group rank for which enumeration-backed operations (saturation,
/// Hilbert bases, cone monoids) are attempted.
inline constexpr int kGroupRankCap = 4;

/// Finitely generated submonoid of an ambient group, with cached group and
/// cone data. Value-semantic and immutable after construction. Saturation
/// and Hilbert data are computed at construction for group rank <= 4 and
/// refused (RankTooLarge) beyond that.
class FsMonoid {
public:
    FsMonoid(Ambient ambient, std::vector<Vec> generators);

    /// Trust door for internal constructions (saturations, unit quotients)
    /// that are saturated by construction; skips the saturation re-check.
    static FsMonoid assume_saturated(Ambient ambient, std::vector<Vec> generators);

    const Ambient& ambient() const { return ambient_; }
    const std::vector<Vec>& generators() const { return gens_; }

    /// Basis of the subgroup generated by the monoid inside the lifted
    /// lattice (torsion relations included), HNF-canonical columns.
    const std::vector<Vec>& group_basis() const { return group_basis_; }

    /// Free rank of the group generated by the monoid.
    int group_rank() const { return group_rank_; }

    /// Extreme rays (modulo lineality) of the rational cone spanned by the
    /// free parts of the generators, and a lineality lattice basis.
    const std::vector<Vec>& cone_rays() const { return cone_rays_; }
    const std::vector<Vec>& cone_lineality() const { return cone_lineality_; }

    /// Facet/equation description of that cone inside Q^free_rank.
    const ConeConstraints& free_cone() const { return free_cone_; }

    /// Generators lying in the unit group; these generate exactly the unit
    /// group of the monoid.
    const std::vector<Vec>& unit_generators() const { return unit_gens_; }

    bool is_sharp() const { return unit_gens_.empty(); }
    bool is_saturated() const;

    bool contains(Vec v) const;

    FsMonoid saturation() const;

    /// Minimal generators of the saturation modulo units (the Hilbert basis
    /// when the saturation is sharp), lex-sorted in-cone representatives.
    const std::vector<Vec>& hilbert() const;

    /// Equality as submonoids of the same ambient group.
    bool same_submonoid(const FsMonoid& o) const;

private:
    struct Trusted {};
    FsMonoid(Ambient ambient, std::vector<Vec> generators, Trusted);
    void build(bool trusted_saturated);

    Ambient ambient_;
    std::vector<Vec> gens_;
    std::vector<Vec> group_basis_;
    int group_rank_ = 0;
    ConeConstraints free_cone_;  // constraints of cone(free parts) in Q^free_rank
    std::vector<Vec> cone_rays_;
    std::vector<Vec> cone_lineality_;
    std::vector<Vec> unit_gens_;
    std::optional<bool> saturated_;   // nullopt: not computed (rank too large)
    std::vector<Vec> sat_gens_;       // generators of the saturation
    std::vector<Vec> hilbert_;        // sharp-part minimal generators of the saturation
    bool hilbert_ready_ = false;
};

/// No-splitting error carrying the torsion invariant factors of the cokernel.
struct TorsionCokernelError : DomainError {
    std::vector<Int> invariants;
    explicit TorsionCokernelError(std::vector<Int> inv);
};

/// Monoid homomorphism induced by an integer matrix on lifted ambient
/// coordinates (target coords x source coords). Construction validates that
/// the matrix respects torsion relations and maps generators into the target.
struct MonoidHom {
    FsMonoid source;
    FsMonoid target;
    IntMatrix matrix;
};

MonoidHom make_hom(FsMonoid source, FsMonoid target, IntMatrix matrix);
Vec hom_apply(const MonoidHom& f, const Vec& v);
MonoidHom compose_homs(const MonoidHom& g, const MonoidHom& f);  // g after f

/// Ideal of a monoid, given by generators (members of the parent).
struct MonoidIdeal {
    FsMonoid parent;
    std::vector<Vec> generators;
};

MonoidIdeal make_ideal(FsMonoid parent, std::vector<Vec> generators);

FsMonoid saturate(const FsMonoid& p);
std::vector<Vec> hilbert_basis(const FsMonoid& p);

struct Sharpening {
    FsMonoid sharp;
    MonoidHom projection;
    IntMatrix section;  // sharp coords -> source coords, projection-compatible
};

/// Quotient of a saturated monoid by its unit group.
Sharpening sharpen(const FsMonoid& p);

struct PushoutResult {
    FsMonoid monoid;  // the saturated pushout
    MonoidHom insertion1, insertion2;
    IntMatrix emb1, emb2;   // ambient embeddings into the direct sum
    GroupQuotient coords;   // direct sum modulo the antidiagonal image
};

/// Saturated pushout Q1 (+)_P Q2 of two homomorphisms with equal source.
PushoutResult saturated_pushout(const MonoidHom& f, const MonoidHom& g);

bool is_group_injective(const MonoidHom& f);
bool is_monoid_iso(const MonoidHom& f);

/// Exactness: the preimage of the target monoid under f^gp equals the
/// source monoid. Requires a saturated target.
bool is_exact(const MonoidHom& f);

/// Kummer: f^gp injective and every target element has a positive multiple
/// in the image. Requires saturated source and target.
bool is_kummer(const MonoidHom& f);

struct NeatSplitting {
    IntMatrix retraction;          // target group basis coords -> source group basis coords
    std::vector<Vec> source_basis; // columns of the source group basis
    std::vector<Vec> target_basis; // columns of the target group basis
    std::vector<Vec> complement;   // basis of a free complement of the image
};

/// Splits an injective f^gp off the target group: retraction r with
/// r o f^gp = id plus a complement basis. Throws TorsionCokernel (with the
/// invariant factors in the message) when no splitting exists. Supports
/// torsion-free ambients.
NeatSplitting neat_splitting(const MonoidHom& f);

/// Self-pushout diagnostic for a homomorphism of sharp saturated monoids:
/// forms the saturated pushout R0 = Q (+)_P Q along f, its sharpening R,
/// and the codiagonal collapse R -> Q, then reports the rank identity
/// rank R0^gp = 2 rank Q^gp - rank P^gp and whether the collapse detects f
/// as an isomorphism. Units of R0 (possibly torsion) block detection.
struct SelfPushoutReport {
    FsMonoid pushout;         // R0, saturated
    FsMonoid sharp_quotient;  // R = R0 / units
    int pushout_rank = 0;
    int expected_rank = 0;
    bool rank_identity_holds = false;
    bool pushout_units_trivial = false;
    bool codiagonal_iso = false;
    bool f_is_iso = false;
    bool iso_detected = false;  // codiagonal_iso && pushout_units_trivial
    bool consistent = false;    // iso_detected == f_is_iso
};

SelfPushoutReport self_pushout_report(const MonoidHom& f);

} // namespace logdiv
