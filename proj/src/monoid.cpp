#include "logdiv/monoid.hpp"

#include "logdiv/errors.hpp"

#include <algorithm>
#include <functional>

namespace logdiv {

void Ambient::normalize(Vec& v) const {
    if (int(v.size()) != coords()) throw DomainError("ShapeMismatch", "element length does not match ambient");
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        Int& x = v[free_rank + i];
        x %= torsion[i];
        if (x < 0) x += torsion[i];
    }
}

Vec Ambient::normalized(Vec v) const {
    normalize(v);
    return v;
}

Vec Ambient::free_part(const Vec& v) const { return Vec(v.begin(), v.begin() + free_rank); }

bool Ambient::is_zero_class(const Vec& v) const {
    Vec w = normalized(v);
    return is_zero_vec(w);
}

std::vector<Vec> Ambient::relation_gens() const {
    std::vector<Vec> rels;
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        Vec r(coords(), Int(0));
        r[free_rank + i] = torsion[i];
        rels.push_back(std::move(r));
    }
    return rels;
}

GroupQuotient quotient_by_subgroup(const Ambient& a, const std::vector<Vec>& subgroup_gens) {
    const int n = a.coords();
    std::vector<Vec> cols = subgroup_gens;
    for (Vec& r : a.relation_gens()) cols.push_back(std::move(r));
    SmithDecomposition s = snf(IntMatrix::from_columns(n, cols));

    int rank = 0;
    int limit = std::min(n, int(cols.size()));
    while (rank < limit && s.diag.at(rank, rank) != 0) ++rank;

    std::vector<int> picked;  // quotient coordinate -> row of U
    GroupQuotient out;
    out.quotient.free_rank = n - rank;
    for (int i = rank; i < n; ++i) picked.push_back(i);
    for (int i = 0; i < rank; ++i) {
        if (s.diag.at(i, i) > 1) {
            out.quotient.torsion.push_back(s.diag.at(i, i));
            picked.push_back(i);
        }
    }

    IntMatrix uinv = inverse_unimodular(s.left);
    out.projection = IntMatrix(int(picked.size()), n);
    out.section = IntMatrix(n, int(picked.size()));
    for (int q = 0; q < int(picked.size()); ++q) {
        for (int j = 0; j < n; ++j) {
            out.projection.at(q, j) = s.left.at(picked[q], j);
            out.section.at(j, q) = uinv.at(j, picked[q]);
        }
    }
    return out;
}

DirectSum direct_sum(const Ambient& a, const Ambient& b) {
    DirectSum out;
    out.sum.free_rank = a.free_rank + b.free_rank;
    out.sum.torsion = a.torsion;
    out.sum.torsion.insert(out.sum.torsion.end(), b.torsion.begin(), b.torsion.end());

    const int n = out.sum.coords();
    out.emb1 = IntMatrix(n, a.coords());
    out.emb2 = IntMatrix(n, b.coords());
    for (int i = 0; i < a.free_rank; ++i) out.emb1.at(i, i) = 1;
    for (int i = 0; i < int(a.torsion.size()); ++i)
        out.emb1.at(out.sum.free_rank + i, a.free_rank + i) = 1;
    for (int i = 0; i < b.free_rank; ++i) out.emb2.at(a.free_rank + i, i) = 1;
    for (int i = 0; i < int(b.torsion.size()); ++i)
        out.emb2.at(out.sum.free_rank + int(a.torsion.size()) + i, b.free_rank + i) = 1;
    return out;
}

FsMonoid::FsMonoid(Ambient ambient, std::vector<Vec> generators)
    : ambient_(std::move(ambient)), gens_(std::move(generators)) {
    build(false);
}

FsMonoid::FsMonoid(Ambient ambient, std::vector<Vec> generators, Trusted)
    : ambient_(std::move(ambient)), gens_(std::move(generators)) {
    build(true);
}

FsMonoid FsMonoid::assume_saturated(Ambient ambient, std::vector<Vec> generators) {
    return FsMonoid(std::move(ambient), std::move(generators), Trusted{});
}

namespace {



// Projection onto the quotient by a saturated sublattice (basis columns),
// via the SNF frame; the quotient of the ambient lattice is free.
IntMatrix quotient_projection(const std::vector<Vec>& basis, int dim) {
    if (basis.empty()) return IntMatrix::identity(dim);
    SmithDecomposition s = snf(IntMatrix::from_columns(dim, basis));
    const int u = int(basis.size());
    for (int i = 0; i < u; ++i)
        if (s.diag.at(i, i) != 1)
            throw DomainError("InternalInvariant", "expected a primitive lattice basis");
    IntMatrix proj(dim - u, dim);
    for (int i = u; i < dim; ++i)
        for (int j = 0; j < dim; ++j) proj.at(i - u, j) = s.left.at(i, j);
    return proj;
}

} // namespace

void FsMonoid::build(bool trusted_saturated) {
    const int n = ambient_.coords();
    for (Vec& g : gens_) ambient_.normalize(g);
    std::sort(gens_.begin(), gens_.end(), lex_less);
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    gens_.erase(std::remove_if(gens_.begin(), gens_.end(), [](const Vec& g) { return is_zero_vec(g); }),
                gens_.end());

    // Group lattice: generators plus the torsion relations, HNF-canonical.
    std::vector<Vec> cols = gens_;
    for (Vec& r : ambient_.relation_gens()) cols.push_back(std::move(r));
    IntMatrix h = hnf(IntMatrix::from_columns(n, cols));
    group_basis_.clear();
    for (int j = 0; j < h.cols(); ++j) {
        Vec c = h.col(j);
        if (!is_zero_vec(c)) group_basis_.push_back(std::move(c));
    }

    std::vector<Vec> frees;
    frees.reserve(gens_.size());
    for (const Vec& g : gens_) frees.push_back(ambient_.free_part(g));
    free_cone_ = constraints_from_generators(frees, ambient_.free_rank);
    ConeGenerators cg = generators_from_constraints(free_cone_);
    cone_rays_ = std::move(cg.rays);
    cone_lineality_ = std::move(cg.lineality);
    group_rank_ = frees.empty() ? 0 : lattice_rank(IntMatrix::from_columns(ambient_.free_rank, frees));

    // A generator is a unit exactly when its free part lies on every facet,
    // i.e. in the lineality space of the cone.
    unit_gens_.clear();
    for (const Vec& g : gens_) {
        Vec f = ambient_.free_part(g);
        bool unit = true;
        for (const Vec& nrm : free_cone_.ineqs)
            if (dot(nrm, f) != 0) {
                unit = false;
                break;
            }
        if (unit) unit_gens_.push_back(g);
    }

    if (group_rank_ > kGroupRankCap) {
        saturated_ = trusted_saturated ? std::optional<bool>(true) : std::nullopt;
        return;
    }

    // Saturation generators: express P^gp in group-basis coordinates y,
    // pull the cone constraints back through the basis, and take the
    // lattice generators of the resulting cone.
    const int r = int(group_basis_.size());
    IntMatrix b = IntMatrix::from_columns(n, group_basis_);
    IntMatrix bfree(ambient_.free_rank, r);
    for (int i = 0; i < ambient_.free_rank; ++i)
        for (int j = 0; j < r; ++j) bfree.at(i, j) = b.at(i, j);

    ConeConstraints ccy;
    ccy.dim = r;
    for (const Vec& nrm : free_cone_.ineqs) ccy.ineqs.push_back(apply_transpose(bfree, nrm));
    for (const Vec& e : free_cone_.eqs) ccy.eqs.push_back(apply_transpose(bfree, e));

    SaturatedGenerators sg = saturated_generators_for_cone(ccy);

    hilbert_.clear();
    for (const Vec& hy : sg.hilbert) {
        Vec v = ambient_.normalized(mat_apply(b, hy));
        if (!is_zero_vec(v)) hilbert_.push_back(std::move(v));
    }
    std::sort(hilbert_.begin(), hilbert_.end(), lex_less);
    hilbert_.erase(std::unique(hilbert_.begin(), hilbert_.end()), hilbert_.end());
    hilbert_ready_ = true;

    sat_gens_ = hilbert_;
    for (const Vec& uy : sg.units) {
        Vec v = mat_apply(b, uy);
        sat_gens_.push_back(ambient_.normalized(v));
        sat_gens_.push_back(ambient_.normalized(vec_neg(v)));
    }

    if (trusted_saturated) {
        saturated_ = true;
        return;
    }
    bool sat = true;
    for (const Vec& v : sat_gens_)
        if (!is_zero_vec(v) && !contains(v)) {
            sat = false;
            break;
        }
    saturated_ = sat;
}

bool FsMonoid::is_saturated() const {
    if (!saturated_)
        throw DomainError("RankTooLarge", "saturation check refused for group rank > 4");
    return *saturated_;
}

const std::vector<Vec>& FsMonoid::hilbert() const {
    if (!hilbert_ready_)
        throw DomainError("RankTooLarge", "Hilbert data refused for group rank > 4");
    return hilbert_;
}

FsMonoid FsMonoid::saturation() const {
    if (!saturated_)
        throw DomainError("RankTooLarge", "saturation refused for group rank > 4");
    if (*saturated_) return *this;
    return FsMonoid(ambient_, sat_gens_, Trusted{});
}

bool FsMonoid::contains(Vec v) const {
    ambient_.normalize(v);
    if (is_zero_vec(v)) return true;
    if (!in_column_lattice(IntMatrix::from_columns(ambient_.coords(), group_basis_), v)) return false;
    Vec vf = ambient_.free_part(v);
    if (!free_cone_.contains(vf)) return false;
    if (saturated_.has_value() && *saturated_) return true;

    // General membership: bounded search over coefficients of the non-unit
    // generators, with the residual checked against the unit lattice. The
    // per-generator bound comes from a strictly positive grading on the
    // pointed image cone (free parts modulo the lineality space).
    std::vector<Vec> non_unit;
    for (const Vec& g : gens_)
        if (!std::binary_search(unit_gens_.begin(), unit_gens_.end(), g, lex_less)) non_unit.push_back(g);

    std::vector<Vec> unit_cols = unit_gens_;
    for (Vec& r : ambient_.relation_gens()) unit_cols.push_back(std::move(r));
    IntMatrix w = IntMatrix::from_columns(ambient_.coords(), unit_cols);

    if (non_unit.empty()) return in_column_lattice(w, v);

    IntMatrix proj = quotient_projection(cone_lineality_, ambient_.free_rank);
    std::vector<Vec> imgs;
    imgs.reserve(non_unit.size());
    for (const Vec& g : non_unit) imgs.push_back(mat_apply(proj, ambient_.free_part(g)));
    ConeConstraints ci = constraints_from_generators(imgs, proj.rows());

    Vec grading(proj.rows(), Int(0));
    for (const Vec& nrm : ci.ineqs) grading = vec_add(grading, nrm);
    Vec target = mat_apply(proj, vf);
    if (!ci.contains(target)) return false;
    Int budget = dot(grading, target);

    std::vector<Int> weight(non_unit.size());
    for (std::size_t i = 0; i < non_unit.size(); ++i) {
        weight[i] = dot(grading, imgs[i]);
        if (weight[i] <= 0)
            throw DomainError("InternalInvariant", "non-unit generator with non-positive grading");
    }

    // Depth-first over coefficient tuples, pruned by the remaining budget.
    std::function<bool(std::size_t, Vec, Int)> search = [&](std::size_t i, Vec residual, Int left) -> bool {
        if (i == non_unit.size()) return in_column_lattice(w, residual);
        for (Int c = 0; c * weight[i] <= left; ++c) {
            Vec next = residual;
            for (std::size_t k = 0; k < next.size(); ++k) next[k] -= c * non_unit[i][k];
            if (search(i + 1, std::move(next), left - c * weight[i])) return true;
        }
        return false;
    };
    return search(0, v, budget);
}

bool FsMonoid::same_submonoid(const FsMonoid& o) const {
    if (ambient_ != o.ambient_) return false;
    for (const Vec& g : gens_)
        if (!o.contains(g)) return false;
    for (const Vec& g : o.gens_)
        if (!contains(g)) return false;
    return true;
}

MonoidHom make_hom(FsMonoid source, FsMonoid target, IntMatrix matrix) {
    const Ambient& sa = source.ambient();
    const Ambient& ta = target.ambient();
    if (matrix.rows() != ta.coords() || matrix.cols() != sa.coords())
        throw DomainError("ShapeMismatch", "homomorphism matrix has wrong shape");

    // Well-defined on torsion: d * (image of the torsion basis vector) must
    // be the zero class of the target.
    for (std::size_t i = 0; i < sa.torsion.size(); ++i) {
        Vec img = matrix.col(sa.free_rank + int(i));
        Vec scaled = vec_scale(sa.torsion[i], img);
        if (!ta.is_zero_class(scaled))
            throw DomainError("InvalidHom", "matrix does not respect source torsion");
    }
    for (const Vec& g : source.generators()) {
        if (!target.contains(mat_apply(matrix, g)))
            throw DomainError("InvalidHom",
                              "generator image " + vec_to_string(ta.normalized(mat_apply(matrix, g))) +
                                  " lies outside the target monoid");
    }
    return MonoidHom{std::move(source), std::move(target), std::move(matrix)};
}

Vec hom_apply(const MonoidHom& f, const Vec& v) { return f.target.ambient().normalized(mat_apply(f.matrix, v)); }

MonoidHom compose_homs(const MonoidHom& g, const MonoidHom& f) {
    if (f.target.ambient() != g.source.ambient() || !f.target.same_submonoid(g.source))
        throw DomainError("SourceMismatch", "middle monoids of a composition differ");
    return make_hom(f.source, g.target, mul(g.matrix, f.matrix));
}

MonoidIdeal make_ideal(FsMonoid parent, std::vector<Vec> generators) {
    for (Vec& g : generators) {
        parent.ambient().normalize(g);
        if (!parent.contains(g))
            throw DomainError("InvalidIdeal", "ideal generator " + vec_to_string(g) + " is not in the monoid");
    }
    std::sort(generators.begin(), generators.end(), lex_less);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    return MonoidIdeal{std::move(parent), std::move(generators)};
}

FsMonoid saturate(const FsMonoid& p) { return p.saturation(); }

std::vector<Vec> hilbert_basis(const FsMonoid& p) { return p.hilbert(); }

Sharpening sharpen(const FsMonoid& p) {
    if (!p.is_saturated()) throw DomainError("NotSaturated", "sharpening requires a saturated monoid");
    GroupQuotient q = quotient_by_subgroup(p.ambient(), p.unit_generators());
    std::vector<Vec> gens;
    gens.reserve(p.generators().size());
    for (const Vec& g : p.generators()) gens.push_back(mat_apply(q.projection, g));
    FsMonoid sharp = FsMonoid::assume_saturated(q.quotient, std::move(gens));
    MonoidHom proj = make_hom(p, sharp, q.projection);
    return Sharpening{std::move(sharp), std::move(proj), std::move(q.section)};
}

PushoutResult saturated_pushout(const MonoidHom& f, const MonoidHom& g) {
    if (f.source.ambient() != g.source.ambient() || !f.source.same_submonoid(g.source))
        throw DomainError("SourceMismatch", "pushout legs have different sources");

    DirectSum ds = direct_sum(f.target.ambient(), g.target.ambient());
    std::vector<Vec> antidiag;
    for (const Vec& p : f.source.generators()) {
        Vec a = mat_apply(ds.emb1, mat_apply(f.matrix, p));
        Vec b = mat_apply(ds.emb2, mat_apply(g.matrix, p));
        antidiag.push_back(vec_sub(a, b));
    }
    GroupQuotient qr = quotient_by_subgroup(ds.sum, antidiag);

    std::vector<Vec> gens;
    for (const Vec& q1 : f.target.generators()) gens.push_back(mat_apply(qr.projection, mat_apply(ds.emb1, q1)));
    for (const Vec& q2 : g.target.generators()) gens.push_back(mat_apply(qr.projection, mat_apply(ds.emb2, q2)));

    FsMonoid base(qr.quotient, std::move(gens));
    FsMonoid sat = base.saturation();

    MonoidHom ins1 = make_hom(f.target, sat, mul(qr.projection, ds.emb1));
    MonoidHom ins2 = make_hom(g.target, sat, mul(qr.projection, ds.emb2));
    return PushoutResult{std::move(sat), std::move(ins1), std::move(ins2),
                         std::move(ds.emb1), std::move(ds.emb2), std::move(qr)};
}

namespace {

// Columns [M * B_src | torsion relations of the target]: an integer vector y
// with M B y in the relation span represents a group-kernel class.
IntMatrix image_with_relations(const MonoidHom& f, IntMatrix& bsrc_out) {
    const Ambient& sa = f.source.ambient();
    const Ambient& ta = f.target.ambient();
    bsrc_out = IntMatrix::from_columns(sa.coords(), f.source.group_basis());
    IntMatrix mb = mul(f.matrix, bsrc_out);
    std::vector<Vec> cols = mb.columns();
    for (Vec& r : ta.relation_gens()) cols.push_back(std::move(r));
    return IntMatrix::from_columns(ta.coords(), cols);
}

} // namespace

bool is_group_injective(const MonoidHom& f) {
    IntMatrix bsrc;
    IntMatrix x = image_with_relations(f, bsrc);
    const int r = bsrc.cols();
    IntMatrix k = kernel_basis(x);
    for (int j = 0; j < k.cols(); ++j) {
        Vec y(r);
        for (int i = 0; i < r; ++i) y[i] = k.at(i, j);
        if (!f.source.ambient().is_zero_class(mat_apply(bsrc, y))) return false;
    }
    return true;
}

bool is_monoid_iso(const MonoidHom& f) {
    if (!is_group_injective(f)) return false;
    IntMatrix bsrc;
    IntMatrix x = image_with_relations(f, bsrc);
    const int r = bsrc.cols();
    for (const Vec& q : f.target.generators()) {
        std::optional<Vec> sol = solve(x, q);
        if (!sol) return false;  // not even group-surjective onto this generator
        Vec y(r);
        for (int i = 0; i < r; ++i) y[i] = (*sol)[i];
        if (!f.source.contains(mat_apply(bsrc, y))) return false;
    }
    return true;
}

bool is_exact(const MonoidHom& f) {
    if (!f.target.is_saturated())
        throw DomainError("NotSaturated", "exactness test requires a saturated target");

    IntMatrix bsrc = IntMatrix::from_columns(f.source.ambient().coords(), f.source.group_basis());
    IntMatrix mb = mul(f.matrix, bsrc);
    const int r = bsrc.cols();
    const int ft = f.target.ambient().free_rank;
    IntMatrix mb_free(ft, r);
    for (int i = 0; i < ft; ++i)
        for (int j = 0; j < r; ++j) mb_free.at(i, j) = mb.at(i, j);

    // (f^gp)^{-1}(Q) in source group coordinates: the image's free part must
    // satisfy the target cone constraints (group membership is automatic).
    ConeConstraints cc;
    cc.dim = r;
    for (const Vec& nrm : f.target.free_cone().ineqs) cc.ineqs.push_back(apply_transpose(mb_free, nrm));
    for (const Vec& e : f.target.free_cone().eqs) cc.eqs.push_back(apply_transpose(mb_free, e));

    SaturatedGenerators sg = saturated_generators_for_cone(cc);
    for (const Vec& hy : sg.hilbert)
        if (!f.source.contains(mat_apply(bsrc, hy))) return false;
    for (const Vec& uy : sg.units) {
        Vec v = mat_apply(bsrc, uy);
        if (!f.source.contains(v) || !f.source.contains(vec_neg(v))) return false;
    }
    return true;
}

bool is_kummer(const MonoidHom& f) {
    if (!is_group_injective(f)) return false;
    const int ft = f.target.ambient().free_rank;
    std::vector<Vec> image_frees;
    for (const Vec& p : f.source.generators())
        image_frees.push_back(f.target.ambient().free_part(hom_apply(f, p)));
    ConeConstraints ci = constraints_from_generators(image_frees, ft);
    for (const Vec& ray : f.target.cone_rays())
        if (!ci.contains(ray)) return false;
    for (const Vec& l : f.target.cone_lineality())
        if (!ci.contains(l) || !ci.contains(vec_neg(l))) return false;
    return true;
}

TorsionCokernelError::TorsionCokernelError(std::vector<Int> inv)
    : DomainError("TorsionCokernel",
                  [&inv] {
                      std::string s = "cokernel has torsion invariants [";
                      for (std::size_t i = 0; i < inv.size(); ++i) {
                          if (i) s += ",";
                          s += inv[i].str();
                      }
                      return s + "]; no neat splitting exists";
                  }()),
      invariants(std::move(inv)) {}

NeatSplitting neat_splitting(const MonoidHom& f) {
    const Ambient& sa = f.source.ambient();
    const Ambient& ta = f.target.ambient();
    if (!sa.torsion.empty() || !ta.torsion.empty())
        throw DomainError("Unsupported", "neat splitting requires torsion-free ambients");
    if (!is_group_injective(f))
        throw DomainError("NotInjective", "neat splitting requires an injective group map");

    IntMatrix bsrc = IntMatrix::from_columns(sa.coords(), f.source.group_basis());
    IntMatrix btgt = IntMatrix::from_columns(ta.coords(), f.target.group_basis());
    IntMatrix mb = mul(f.matrix, bsrc);
    const int r = bsrc.cols(), s = btgt.cols();

    // Image basis in target group coordinates.
    IntMatrix x(s, r);
    for (int j = 0; j < r; ++j) {
        std::optional<Vec> sol = solve(btgt, mb.col(j));
        if (!sol) throw DomainError("InternalInvariant", "image vector outside the target group");
        for (int i = 0; i < s; ++i) x.at(i, j) = (*sol)[i];
    }

    SmithDecomposition sd = snf(x);
    std::vector<Int> torsion;
    for (const Int& d : sd.invariants())
        if (d > 1) torsion.push_back(d);
    if (!torsion.empty()) throw TorsionCokernelError(std::move(torsion));
    if (sd.rank() != r) throw DomainError("InternalInvariant", "injective map with rank-deficient image");

    // left * x * right = [I_r; 0]  =>  (right * [I_r | 0] * left) * x = I_r.
    IntMatrix cut(r, s);
    for (int i = 0; i < r; ++i) cut.at(i, i) = 1;
    IntMatrix retraction = mul(mul(sd.right, cut), sd.left);

    IntMatrix uinv = inverse_unimodular(sd.left);
    NeatSplitting out;
    out.retraction = std::move(retraction);
    out.source_basis = bsrc.columns();
    out.target_basis = btgt.columns();
    for (int j = r; j < s; ++j) out.complement.push_back(mat_apply(btgt, uinv.col(j)));
    return out;
}

SelfPushoutReport self_pushout_report(const MonoidHom& f) {
    if (!f.source.is_saturated() || !f.source.is_sharp() || !f.target.is_saturated() ||
        !f.target.is_sharp())
        throw DomainError("NotSharp", "self-pushout diagnostic requires sharp saturated monoids");

    PushoutResult po = saturated_pushout(f, f);
    const FsMonoid& r0 = po.monoid;

    // Codiagonal on the direct sum, pushed through the quotient section;
    // constructing it as a hom doubles as a well-definedness check.
    IntMatrix nabla0 = po.emb1.transpose();
    IntMatrix e2t = po.emb2.transpose();
    for (int i = 0; i < nabla0.rows(); ++i)
        for (int j = 0; j < nabla0.cols(); ++j) nabla0.at(i, j) += e2t.at(i, j);
    IntMatrix nabla = mul(nabla0, po.coords.section);
    make_hom(r0, f.target, nabla);

    Sharpening sh = sharpen(r0);
    MonoidHom collapse = make_hom(sh.sharp, f.target, mul(nabla, sh.section));

    SelfPushoutReport rep{r0, sh.sharp};
    rep.pushout_rank = r0.group_rank();
    rep.expected_rank = 2 * f.target.group_rank() - f.source.group_rank();
    rep.rank_identity_holds = (rep.pushout_rank == rep.expected_rank);
    rep.pushout_units_trivial = r0.unit_generators().empty();
    rep.codiagonal_iso = is_monoid_iso(collapse);
    rep.f_is_iso = is_monoid_iso(f);
    rep.iso_detected = rep.codiagonal_iso && rep.pushout_units_trivial;
    rep.consistent = (rep.iso_detected == rep.f_is_iso);
    return rep;
}

} // namespace logdiv
