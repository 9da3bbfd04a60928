#include "logdiv/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace logdiv {

namespace {

std::string describe_rays(const std::vector<Vec>& rays) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (i) os << ", ";
        os << vec_to_string(rays[i]);
    }
    os << "}";
    return os.str();
}

} // namespace

Cone Cone::from_generators(int ambient_rank, std::vector<Vec> gens) {
    if (ambient_rank < 0)
        throw DomainError("InvalidFan", "negative ambient rank");
    for (const Vec& g : gens)
        if (static_cast<int>(g.size()) != ambient_rank)
            throw DomainError("ShapeMismatch", "cone generator has wrong length");
    ConeConstraints cc = constraints_from_generators(gens, ambient_rank);
    ConeGenerators cg = generators_from_constraints(cc);
    if (!cg.lineality.empty())
        throw DomainError("NotPointed", "cone contains a line: " + describe_rays(gens));
    Cone c;
    c.ambient_rank_ = ambient_rank;
    c.dim_ = ambient_rank - static_cast<int>(cc.eqs.size());
    c.rays_ = canonical_ray_set(cg.rays);
    c.normals_ = cc.ineqs;
    c.span_eqs_ = cc.eqs;
    return c;
}

Cone Cone::from_rays(int ambient_rank, std::vector<Vec> rays) {
    Cone c = from_generators(ambient_rank, rays);
    std::vector<Vec> given = rays;
    std::sort(given.begin(), given.end(), lex_less);
    given.erase(std::unique(given.begin(), given.end()), given.end());
    if (given != c.rays_)
        throw DomainError("InvalidFan",
                          "ray list is not the set of primitive extreme rays: got " + describe_rays(given) +
                              ", reduced to " + describe_rays(c.rays_));
    return c;
}

bool Cone::contains(const Vec& v) const {
    for (const Vec& e : span_eqs_)
        if (dot(e, v) != 0) return false;
    for (const Vec& n : normals_)
        if (dot(n, v) < 0) return false;
    return true;
}

bool Cone::contains_relint(const Vec& v) const {
    for (const Vec& e : span_eqs_)
        if (dot(e, v) != 0) return false;
    for (const Vec& n : normals_)
        if (dot(n, v) <= 0) return false;
    return true;
}

bool Cone::contains_cone(const Cone& c) const {
    for (const Vec& r : c.rays_)
        if (!contains(r)) return false;
    return true;
}

std::vector<Cone> Cone::faces() const {
    // Every face is cut out by a subset of the facet normals; close the ray
    // subsets under "restrict to a facet normal's kernel", starting from the
    // full cone.
    std::set<std::vector<Vec>> seen;
    std::vector<std::vector<Vec>> queue;
    seen.insert(rays_);
    queue.push_back(rays_);
    while (!queue.empty()) {
        std::vector<Vec> cur = queue.back();
        queue.pop_back();
        for (const Vec& n : normals_) {
            std::vector<Vec> sub;
            for (const Vec& r : cur)
                if (dot(n, r) == 0) sub.push_back(r);
            if (seen.insert(sub).second) queue.push_back(sub);
        }
    }
    std::vector<Cone> out;
    for (const std::vector<Vec>& rs : seen)
        out.push_back(from_generators(ambient_rank_, rs));
    std::sort(out.begin(), out.end(), cone_less);
    return out;
}

std::vector<Cone> Cone::facets() const {
    std::set<std::vector<Vec>> seen;
    std::vector<Cone> out;
    for (const Vec& n : normals_) {
        std::vector<Vec> sub;
        for (const Vec& r : rays_)
            if (dot(n, r) == 0) sub.push_back(r);
        Cone f = from_generators(ambient_rank_, sub);
        if (f.dim_ == dim_ - 1 && seen.insert(f.rays_).second) out.push_back(f);
    }
    std::sort(out.begin(), out.end(), cone_less);
    return out;
}

bool Cone::is_face_of(const Cone& big) const {
    if (ambient_rank_ != big.ambient_rank_) return false;
    if (!big.contains_cone(*this)) return false;
    // Smallest face of `big` containing this cone: zero set of every facet
    // normal of `big` that vanishes on all of our rays.
    std::vector<const Vec*> active;
    for (const Vec& n : big.normals_) {
        bool all_zero = true;
        for (const Vec& r : rays_)
            if (dot(n, r) != 0) { all_zero = false; break; }
        if (all_zero) active.push_back(&n);
    }
    std::vector<Vec> face_rays;
    for (const Vec& r : big.rays_) {
        bool keep = true;
        for (const Vec* n : active)
            if (dot(*n, r) != 0) { keep = false; break; }
        if (keep) face_rays.push_back(r);
    }
    std::sort(face_rays.begin(), face_rays.end(), lex_less);
    return face_rays == rays_;
}

Cone Cone::intersect(const Cone& o) const {
    if (ambient_rank_ != o.ambient_rank_)
        throw DomainError("ShapeMismatch", "intersecting cones of different ambient rank");
    ConeConstraints cc;
    cc.dim = ambient_rank_;
    cc.ineqs = normals_;
    cc.ineqs.insert(cc.ineqs.end(), o.normals_.begin(), o.normals_.end());
    cc.eqs = span_eqs_;
    cc.eqs.insert(cc.eqs.end(), o.span_eqs_.begin(), o.span_eqs_.end());
    ConeGenerators cg = generators_from_constraints(cc);
    if (!cg.lineality.empty())
        throw DomainError("InternalInvariant", "intersection of pointed cones contains a line");
    return from_generators(ambient_rank_, cg.rays);
}

bool cone_less(const Cone& a, const Cone& b) {
    return std::lexicographical_compare(a.rays().begin(), a.rays().end(), b.rays().begin(), b.rays().end(),
                                        lex_less);
}

Fan::Fan(int ambient_rank, std::vector<Cone> max_cones) : ambient_rank_(ambient_rank) {
    for (const Cone& c : max_cones)
        if (c.ambient_rank() != ambient_rank)
            throw DomainError("InvalidFan", "cone ambient rank differs from fan ambient rank");
    std::sort(max_cones.begin(), max_cones.end(), cone_less);
    for (std::size_t i = 0; i + 1 < max_cones.size(); ++i)
        if (max_cones[i] == max_cones[i + 1])
            throw DomainError("InvalidFan", "duplicate maximal cone " + describe_rays(max_cones[i].rays()));
    for (std::size_t i = 0; i < max_cones.size(); ++i)
        for (std::size_t j = 0; j < max_cones.size(); ++j) {
            if (i == j) continue;
            if (max_cones[j].contains_cone(max_cones[i]))
                throw DomainError("InvalidFan", "cone " + describe_rays(max_cones[i].rays()) +
                                                    " is contained in cone " +
                                                    describe_rays(max_cones[j].rays()));
        }
    for (std::size_t i = 0; i < max_cones.size(); ++i)
        for (std::size_t j = i + 1; j < max_cones.size(); ++j) {
            Cone meet = max_cones[i].intersect(max_cones[j]);
            if (!meet.is_face_of(max_cones[i]) || !meet.is_face_of(max_cones[j]))
                throw DomainError("InvalidFan", "intersection of " + describe_rays(max_cones[i].rays()) +
                                                    " and " + describe_rays(max_cones[j].rays()) +
                                                    " is not a common face");
        }
    max_cones_ = std::move(max_cones);
}

bool Fan::contains_point(const Vec& v) const {
    for (const Cone& c : max_cones_)
        if (c.contains(v)) return true;
    return false;
}

std::optional<Cone> Fan::find_cone(const Vec& v) const {
    for (const Cone& f : all_faces())
        if (f.contains_relint(v)) return f;
    return std::nullopt;
}

std::vector<Cone> Fan::all_faces() const {
    std::set<std::vector<Vec>> seen;
    std::vector<Cone> out;
    for (const Cone& c : max_cones_) {
        std::vector<Cone> fs = c.faces();
        for (Cone& f : fs)
            if (seen.insert(f.rays()).second) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), cone_less);
    return out;
}

FanValidation validate_fan_data(int ambient_rank, const std::vector<std::vector<Vec>>& cones) {
    FanValidation v;
    std::vector<Cone> built;
    for (const std::vector<Vec>& rays : cones) {
        for (const Vec& r : rays) {
            if (static_cast<int>(r.size()) != ambient_rank)
                return {false, "ray " + vec_to_string(r) + " has wrong length"};
            if (is_zero_vec(r)) return {false, "zero vector listed as a ray"};
            if (content(r) != 1) return {false, "ray " + vec_to_string(r) + " is not primitive"};
        }
        try {
            built.push_back(Cone::from_rays(ambient_rank, rays));
        } catch (const DomainError& e) {
            return {false, e.what()};
        }
    }
    try {
        Fan f(ambient_rank, built);
        (void)f;
    } catch (const DomainError& e) {
        return {false, e.what()};
    }
    return v;
}

FanMorphism make_fan_morphism(Fan source, Fan target, IntMatrix matrix) {
    if (matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank())
        throw DomainError("ShapeMismatch", "fan morphism matrix must be target rank x source rank");
    for (const Cone& c : source.max_cones()) {
        bool mapped = false;
        for (const Cone& t : target.max_cones()) {
            bool inside = true;
            for (const Vec& r : c.rays())
                if (!t.contains(mat_apply(matrix, r))) { inside = false; break; }
            if (inside) { mapped = true; break; }
        }
        if (!mapped)
            throw DomainError("InvalidMorphism", "image of cone " + describe_rays(c.rays()) +
                                                     " is not contained in any target cone");
    }
    return FanMorphism{std::move(source), std::move(target), std::move(matrix)};
}

bool subfan_covers_cone(const std::vector<Cone>& pieces, const Cone& sigma) {
    const int d = sigma.dim();
    if (d == 0) return !pieces.empty();
    std::vector<const Cone*> full;
    for (const Cone& p : pieces)
        if (p.dim() == d) full.push_back(&p);
    if (full.empty()) return false;
    for (const Cone* c : full) {
        for (const Vec& n : c->facet_normals()) {
            std::vector<Vec> facet_rays;
            for (const Vec& r : c->rays())
                if (dot(n, r) == 0) facet_rays.push_back(r);
            // Facet on the boundary of sigma: some facet normal of sigma
            // vanishes on all of its rays.
            bool boundary = false;
            for (const Vec& m : sigma.facet_normals()) {
                bool all_zero = true;
                for (const Vec& r : facet_rays)
                    if (dot(m, r) != 0) { all_zero = false; break; }
                if (all_zero) { boundary = true; break; }
            }
            if (boundary) continue;
            // Interior facet: needs a neighbour piece containing the facet
            // and reaching strictly past it.
            bool matched = false;
            for (const Cone* other : full) {
                if (other == c) continue;
                bool contains_facet = true;
                for (const Vec& r : facet_rays)
                    if (!other->contains(r)) { contains_facet = false; break; }
                if (!contains_facet) continue;
                bool crosses = false;
                for (const Vec& r : other->rays())
                    if (dot(n, r) < 0) { crosses = true; break; }
                if (crosses) { matched = true; break; }
            }
            if (!matched) return false;
        }
    }
    return true;
}

namespace {

bool fan_covers_fan(const Fan& a, const Fan& b) {
    // Is |b| contained in |a|?  Each maximal cone of b must be covered by its
    // intersections with the cones of a.
    for (const Cone& sigma : b.max_cones()) {
        std::vector<Cone> pieces;
        for (const Cone& tau : a.max_cones()) pieces.push_back(sigma.intersect(tau));
        if (!subfan_covers_cone(pieces, sigma)) return false;
    }
    return true;
}

} // namespace

bool supports_equal(const Fan& a, const Fan& b) {
    if (a.ambient_rank() != b.ambient_rank()) return false;
    if (a.max_cones().empty() || b.max_cones().empty())
        return a.max_cones().empty() && b.max_cones().empty();
    return fan_covers_fan(a, b) && fan_covers_fan(b, a);
}

bool is_subdivision(const Fan& fine, const Fan& base) {
    if (fine.ambient_rank() != base.ambient_rank()) return false;
    for (const Cone& c : fine.max_cones()) {
        bool inside = false;
        for (const Cone& b : base.max_cones())
            if (b.contains_cone(c)) { inside = true; break; }
        if (!inside) return false;
    }
    // Each base cone must be exactly covered by the fine cones it contains.
    for (const Cone& b : base.max_cones()) {
        std::vector<Cone> pieces;
        for (const Cone& c : fine.max_cones())
            if (b.contains_cone(c)) pieces.push_back(c);
        if (b.dim() == 0) {
            if (pieces.empty()) return false;
            continue;
        }
        if (!subfan_covers_cone(pieces, b)) return false;
    }
    return true;
}

Subdivision make_subdivision(Fan base, Fan fine) {
    if (!is_subdivision(fine, base))
        throw DomainError("NotSubdivision", "fan is not a subdivision of the base");
    return Subdivision{std::move(base), std::move(fine)};
}

Fan star_subdivision(const Fan& f, const Vec& ray) {
    if (static_cast<int>(ray.size()) != f.ambient_rank())
        throw DomainError("ShapeMismatch", "ray has wrong length");
    if (is_zero_vec(ray) || content(ray) != 1)
        throw DomainError("RayNotPrimitive", "star center " + vec_to_string(ray) + " must be primitive");
    if (!f.contains_point(ray))
        throw DomainError("RayOutsideSupport", "star center " + vec_to_string(ray) + " lies outside the fan");
    std::vector<Cone> out;
    std::set<std::vector<Vec>> seen;
    auto push = [&](Cone c) {
        if (seen.insert(c.rays()).second) out.push_back(std::move(c));
    };
    for (const Cone& sigma : f.max_cones()) {
        if (!sigma.contains(ray)) {
            push(sigma);
            continue;
        }
        for (const Cone& tau : sigma.facets()) {
            if (tau.contains(ray)) continue;
            std::vector<Vec> gens = tau.rays();
            gens.push_back(ray);
            push(Cone::from_generators(f.ambient_rank(), gens));
        }
    }
    return Fan(f.ambient_rank(), std::move(out));
}

std::vector<Cone> maximal_pieces(std::vector<Cone> pieces) {
    std::sort(pieces.begin(), pieces.end(), cone_less);
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    std::vector<Cone> out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            if (i == j) continue;
            if (pieces[j].contains_cone(pieces[i]) && !(pieces[i] == pieces[j])) { dominated = true; break; }
        }
        if (!dominated) out.push_back(pieces[i]);
    }
    return out;
}

Cone preimage_intersect(const Cone& delta, const IntMatrix& matrix, const Cone& sigma) {
    if (matrix.rows() != sigma.ambient_rank() || matrix.cols() != delta.ambient_rank())
        throw DomainError("ShapeMismatch", "matrix shape does not match cone ambient ranks");
    ConeConstraints cc;
    cc.dim = delta.ambient_rank();
    cc.ineqs = delta.facet_normals();
    cc.eqs = delta.span_equations();
    for (const Vec& n : sigma.facet_normals()) cc.ineqs.push_back(apply_transpose(matrix, n));
    for (const Vec& e : sigma.span_equations()) cc.eqs.push_back(apply_transpose(matrix, e));
    ConeGenerators cg = generators_from_constraints(cc);
    if (!cg.lineality.empty())
        throw DomainError("InternalInvariant", "preimage piece of a pointed cone contains a line");
    return Cone::from_generators(delta.ambient_rank(), cg.rays);
}

Fan common_refinement(const Fan& a, const Fan& b) {
    if (!supports_equal(a, b))
        throw DomainError("SupportMismatch", "fans have different supports");
    std::vector<Cone> pieces;
    for (const Cone& s : a.max_cones())
        for (const Cone& t : b.max_cones()) pieces.push_back(s.intersect(t));
    return Fan(a.ambient_rank(), maximal_pieces(std::move(pieces)));
}

Subdivision pullback_subdivision(const FanMorphism& fm, const Subdivision& target_sub) {
    if (!(target_sub.base == fm.target))
        throw DomainError("SupportMismatch", "subdivision base is not the morphism target");
    std::vector<Cone> pieces;
    for (const Cone& delta : fm.source.max_cones())
        for (const Cone& sig : target_sub.fine.max_cones())
            pieces.push_back(preimage_intersect(delta, fm.matrix, sig));
    Fan fine(fm.source.ambient_rank(), maximal_pieces(std::move(pieces)));
    if (!is_subdivision(fine, fm.source))
        throw DomainError("InternalInvariant", "pullback did not produce a subdivision");
    return Subdivision{fm.source, std::move(fine)};
}

FsMonoid cone_monoid(const Cone& c) {
    if (c.ambient_rank() > kGroupRankCap)
        throw DomainError("RankTooLarge", "cone monoid supported only up to ambient rank 4");
    ConeConstraints cc;
    cc.dim = c.ambient_rank();
    cc.ineqs = c.rays();
    SaturatedGenerators sg = saturated_generators_for_cone(cc);
    std::vector<Vec> gens = sg.hilbert;
    for (const Vec& u : sg.units) {
        gens.push_back(u);
        gens.push_back(vec_neg(u));
    }
    return FsMonoid::assume_saturated(Ambient{c.ambient_rank(), {}}, gens);
}

} // namespace logdiv
