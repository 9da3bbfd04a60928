#pragma once

#include "logdiv/bigint.hpp"
#include "logdiv/errors.hpp"
#include "logdiv/geometry.hpp"
#include "logdiv/matrix.hpp"
#include "logdiv/monoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logdiv {

/// Strongly convex rational polyhedral cone, stored by its primitive
/// extreme rays (lex-sorted, canonical) together with cached proper facet
/// inequalities and span equations, so membership tests are pure sign
/// checks.
class Cone {
public:
    /// Builds from arbitrary generators, reducing to extreme rays; throws
    /// DomainError("NotPointed") if the cone contains a line.
    static Cone from_generators(int ambient_rank, std::vector<Vec> gens);

    /// Strict form: the input must already be the primitive extreme rays.
    static Cone from_rays(int ambient_rank, std::vector<Vec> rays);

    int ambient_rank() const { return ambient_rank_; }
    int dim() const { return dim_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Vec>& facet_normals() const { return normals_; }
    const std::vector<Vec>& span_equations() const { return span_eqs_; }

    bool contains(const Vec& v) const;
    bool contains_relint(const Vec& v) const;
    bool contains_cone(const Cone& c) const;

    bool operator==(const Cone& o) const { return ambient_rank_ == o.ambient_rank_ && rays_ == o.rays_; }
    bool operator!=(const Cone& o) const { return !(*this == o); }

    /// All faces, from the zero cone up to the cone itself.
    std::vector<Cone> faces() const;

    /// Codimension-one faces.
    std::vector<Cone> facets() const;

    bool is_face_of(const Cone& big) const;

    Cone intersect(const Cone& o) const;

private:
    Cone() = default;
    int ambient_rank_ = 0;
    int dim_ = 0;
    std::vector<Vec> rays_;
    std::vector<Vec> normals_;
    std::vector<Vec> span_eqs_;
};

/// Canonical order on cones of equal ambient rank (by sorted ray lists).
bool cone_less(const Cone& a, const Cone& b);

/// Fan stored by its maximal cones (canonically sorted). Construction
/// validates strong convexity, maximality, and that pairwise intersections
/// are faces of both sides; throws DomainError("InvalidFan") on defects.
class Fan {
public:
    Fan(int ambient_rank, std::vector<Cone> max_cones);

    int ambient_rank() const { return ambient_rank_; }
    const std::vector<Cone>& max_cones() const { return max_cones_; }

    bool operator==(const Fan& o) const { return ambient_rank_ == o.ambient_rank_ && max_cones_ == o.max_cones_; }
    bool operator!=(const Fan& o) const { return !(*this == o); }

    bool contains_point(const Vec& v) const;

    /// Smallest cone of the fan containing v (the one with v in its relative
    /// interior), or nullopt when v is outside the support.
    std::optional<Cone> find_cone(const Vec& v) const;

    /// Every face of every maximal cone, deduplicated.
    std::vector<Cone> all_faces() const;

private:
    int ambient_rank_;
    std::vector<Cone> max_cones_;
};

struct FanValidation {
    bool ok = true;
    std::string message;
};

/// Non-throwing validation of raw fan data (lists of ray lists).
FanValidation validate_fan_data(int ambient_rank, const std::vector<std::vector<Vec>>& cones);

/// Fan morphism determined by an integer matrix; validity (each source cone
/// lands in some target cone) is checked at construction and the witness
/// assignment is recomputed on demand rather than stored.
struct FanMorphism {
    Fan source;
    Fan target;
    IntMatrix matrix;
};

FanMorphism make_fan_morphism(Fan source, Fan target, IntMatrix matrix);

/// Subdivision: a refinement of `base` with equal support.
struct Subdivision {
    Fan base;
    Fan fine;
};

Subdivision make_subdivision(Fan base, Fan fine);

bool is_subdivision(const Fan& fine, const Fan& base);
bool supports_equal(const Fan& a, const Fan& b);

/// Exact covering test: do the pieces (cones inside sigma, closed under the
/// fan intersection property) cover sigma? Works by matching every interior
/// facet of every top-dimensional piece with a neighbour on the other side.
bool subfan_covers_cone(const std::vector<Cone>& pieces, const Cone& sigma);

/// Drops duplicates and cones contained in another cone of the list.
std::vector<Cone> maximal_pieces(std::vector<Cone> pieces);

/// delta intersected with the preimage of sigma under the matrix, computed
/// by pulling sigma's facet/span constraints back through the matrix.
Cone preimage_intersect(const Cone& delta, const IntMatrix& matrix, const Cone& sigma);

/// Star subdivision at a primitive lattice vector in the support.
/// Errors: RayNotPrimitive, RayOutsideSupport.
Fan star_subdivision(const Fan& f, const Vec& ray);

/// Coarsest common refinement of two fans with equal support.
/// Error: SupportMismatch.
Fan common_refinement(const Fan& a, const Fan& b);

/// Pulls a subdivision of the morphism's target back to its source: pieces
/// are delta intersect A^{-1}(sigma'). The result is the coarsest
/// subdivision of the source making the matrix a map to the fine target.
Subdivision pullback_subdivision(const FanMorphism& fm, const Subdivision& target_sub);

/// Monoid of lattice points of the dual cone (the chart monoid of the
/// affine piece attached to c). Error: RankTooLarge for ambient rank > 4.
FsMonoid cone_monoid(const Cone& c);

} // namespace logdiv
