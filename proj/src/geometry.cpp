#include "logdiv/geometry.hpp"

#include "logdiv/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace logdiv {

std::vector<Vec> canonical_ray_set(std::vector<Vec> rays) {
    std::vector<Vec> out;
    for (Vec& r : rays) {
        if (is_zero_vec(r)) continue;
        out.push_back(primitive_part(std::move(r)));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ConeConstraints::contains(const Vec& x) const {
    for (const Vec& n : ineqs)
        if (dot(n, x) < 0) return false;
    for (const Vec& e : eqs)
        if (dot(e, x) != 0) return false;
    return true;
}

namespace {

// Enumerates index subsets of {0..n-1} of the given size, in lexicographic
// order, invoking fn on each. Subset sizes here are at most dim-1 <= 3.
void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(size);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == size) {
            fn(idx);
            return;
        }
        for (int i = start; i <= n - (size - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace

ConeGenerators dual_generators(const std::vector<Vec>& gens, int dim) {
    ConeGenerators out;

    IntMatrix genRows = IntMatrix::from_rows(dim, gens);
    IntMatrix lin = kernel_basis(genRows);  // basis of {y : <y,g> = 0 for all g}
    for (int j = 0; j < lin.cols(); ++j) out.lineality.push_back(lin.col(j));

    int r = dim - lin.cols();  // rank of the generator span
    if (r == 0) return out;    // dual is all of Z^dim

    // Each facet of cone(gens) is spanned by generators of rank r-1; its
    // normal line is the kernel of such a subset (modulo out.lineality).
    // Collect every oriented candidate whose products with gens are >= 0.
    std::map<std::vector<int>, Vec> seen;  // sign pattern -> representative
    for_each_subset(int(gens.size()), r - 1, [&](const std::vector<int>& idx) {
        std::vector<Vec> sub;
        sub.reserve(idx.size());
        for (int i : idx) sub.push_back(gens[i]);
        IntMatrix subRows = IntMatrix::from_rows(dim, sub);
        if (lattice_rank(subRows) != r - 1) return;
        IntMatrix ker = kernel_basis(subRows);
        // ker = lineality + one extra line; any basis column with a nonzero
        // product against some generator represents that line.
        for (int j = 0; j < ker.cols(); ++j) {
            Vec k = ker.col(j);
            bool pos = false, neg = false;
            std::vector<int> pattern(gens.size());
            for (std::size_t g = 0; g < gens.size(); ++g) {
                int s = sgn(dot(k, gens[g]));
                pattern[g] = s;
                if (s > 0) pos = true;
                if (s < 0) neg = true;
            }
            if (!pos && !neg) continue;  // k lies in the lineality space
            if (pos && neg) break;       // mixed signs: not a dual ray
            if (neg) {
                k = vec_neg(k);
                for (int& s : pattern) s = -s;
            }
            k = primitive_part(std::move(k));
            seen.emplace(std::move(pattern), std::move(k));
            break;
        }
    });

    for (auto& [pattern, k] : seen) out.rays.push_back(std::move(k));
    out.rays = canonical_ray_set(std::move(out.rays));
    return out;
}

ConeConstraints constraints_from_generators(const std::vector<Vec>& gens, int dim) {
    ConeGenerators d = dual_generators(gens, dim);
    ConeConstraints c;
    c.dim = dim;
    c.ineqs = std::move(d.rays);
    c.eqs = std::move(d.lineality);
    return c;
}

ConeGenerators generators_from_constraints(const ConeConstraints& c) {
    // {x : N x >= 0, E x = 0} is the dual cone of cone(N, E, -E).
    std::vector<Vec> gens = c.ineqs;
    for (const Vec& e : c.eqs) {
        gens.push_back(e);
        gens.push_back(vec_neg(e));
    }
    if (gens.empty()) {
        // No constraints: the whole lattice.
        ConeGenerators out;
        IntMatrix id = IntMatrix::identity(c.dim);
        for (int j = 0; j < c.dim; ++j) out.lineality.push_back(id.col(j));
        return out;
    }
    return dual_generators(gens, c.dim);
}

namespace {

constexpr long kBoxCellCap = 5000000;  // cap on lattice points enumerated per box

void enumerate_box(const std::vector<long>& lo, const std::vector<long>& hi,
                   const std::function<void(const Vec&)>& fn) {
    std::size_t d = lo.size();
    Vec v(d);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d) {
            fn(v);
            return;
        }
        for (long x = lo[i]; x <= hi[i]; ++x) {
            v[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
}

long checked_long(const Int& x, const char* what) {
    if (x > 1000000 || x < -1000000)
        throw EnumerationLimit(std::string(what) + " exceeds the desk-scale enumeration range");
    return long(x);
}

} // namespace

std::vector<Vec> hilbert_basis_pointed(const std::vector<Vec>& rays, int dim) {
    if (rays.empty()) return {};

    ConeConstraints cc = constraints_from_generators(rays, dim);
    // Pointedness check: the constraint region must contain no line.
    {
        std::vector<Vec> stacked = cc.ineqs;
        stacked.insert(stacked.end(), cc.eqs.begin(), cc.eqs.end());
        if (kernel_basis(IntMatrix::from_rows(dim, stacked)).cols() != 0)
            throw DomainError("NotPointed", "Hilbert basis requested for a non-pointed cone");
    }

    // Strictly positive grading on the cone: the sum of all facet normals.
    Vec grading(dim, Int(0));
    for (const Vec& n : cc.ineqs) grading = vec_add(grading, n);
    for (const Vec& r : rays)
        if (dot(grading, r) <= 0)
            throw DomainError("InternalInvariant", "grading is not positive on a cone ray");

    // Every indecomposable lattice point lies in the zonotope spanned by the
    // extreme rays, hence inside this coordinate box.
    std::vector<long> lo(dim, 0), hi(dim, 0);
    long cells = 1;
    for (int j = 0; j < dim; ++j) {
        Int l = 0, h = 0;
        for (const Vec& r : rays) {
            if (r[j] < 0) l += r[j];
            if (r[j] > 0) h += r[j];
        }
        lo[j] = checked_long(l, "Hilbert box bound");
        hi[j] = checked_long(h, "Hilbert box bound");
        long width = hi[j] - lo[j] + 1;
        if (cells > kBoxCellCap / width)
            throw EnumerationLimit("Hilbert basis box has too many lattice points");
        cells *= width;
    }

    std::vector<Vec> candidates;
    enumerate_box(lo, hi, [&](const Vec& v) {
        if (is_zero_vec(v)) return;
        if (cc.contains(v)) candidates.push_back(v);
    });

    std::sort(candidates.begin(), candidates.end(), [&](const Vec& a, const Vec& b) {
        Int ga = dot(grading, a), gb = dot(grading, b);
        if (ga != gb) return ga < gb;
        return lex_less(a, b);
    });

    // Sweep in order of the grading; v is indecomposable iff no previously
    // accepted element u has v - u back in the cone.
    std::vector<Vec> basis;
    for (const Vec& v : candidates) {
        bool decomposable = false;
        for (const Vec& u : basis) {
            Vec w = vec_sub(v, u);
            if (is_zero_vec(w)) continue;
            if (cc.contains(w)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) basis.push_back(v);
    }

    std::sort(basis.begin(), basis.end(), lex_less);
    return basis;
}

SaturatedGenerators saturated_generators_for_cone(const ConeConstraints& cc) {
    SaturatedGenerators out;
    int dim = cc.dim;

    std::vector<Vec> stacked = cc.ineqs;
    stacked.insert(stacked.end(), cc.eqs.begin(), cc.eqs.end());
    IntMatrix lin = kernel_basis(IntMatrix::from_rows(dim, stacked));
    const int u = lin.cols();

    if (u == 0) {
        ConeGenerators g = generators_from_constraints(cc);
        out.hilbert = hilbert_basis_pointed(g.rays, dim);
        return out;
    }

    for (int j = 0; j < u; ++j) out.units.push_back(lin.col(j));

    // Quotient coordinates: in the SNF frame U m V = D of the lineality
    // basis, the lineality lattice becomes Z^u x 0, so the last dim-u rows
    // of U project onto the (free) quotient and the matching columns of
    // U^{-1} provide a section.
    SmithDecomposition s = snf(lin);
    for (int i = 0; i < u; ++i)
        if (s.diag.at(i, i) != 1)
            throw DomainError("InternalInvariant", "lineality basis is not primitive");
    IntMatrix proj(dim - u, dim);
    for (int i = u; i < dim; ++i)
        for (int j = 0; j < dim; ++j) proj.at(i - u, j) = s.left.at(i, j);
    IntMatrix uinv = inverse_unimodular(s.left);
    IntMatrix section(dim, dim - u);
    for (int i = 0; i < dim; ++i)
        for (int j = u; j < dim; ++j) section.at(i, j - u) = uinv.at(i, j);

    ConeGenerators g = generators_from_constraints(cc);
    std::vector<Vec> image;
    image.reserve(g.rays.size());
    for (const Vec& r : g.rays) image.push_back(mat_apply(proj, r));
    image = canonical_ray_set(std::move(image));

    std::vector<Vec> hb = hilbert_basis_pointed(image, dim - u);

    // Lift each quotient generator back into the cone: the section lands in
    // the right residue class, and some lineality translate lies inside.
    for (const Vec& h : hb) {
        Vec x0 = mat_apply(section, h);
        bool found = false;
        for (long radius = 0; radius <= 1024 && !found; radius = (radius == 0 ? 1 : radius * 2)) {
            long width = 2 * radius + 1, cells = 1;
            for (int j = 0; j < u; ++j) {
                if (cells > kBoxCellCap / width)
                    throw EnumerationLimit("lineality lift search box is too large");
                cells *= width;
            }
            std::vector<long> lo(u, -radius), hi(u, radius);
            enumerate_box(lo, hi, [&](const Vec& a) {
                if (found) return;
                Vec x = x0;
                for (int j = 0; j < u; ++j)
                    if (a[j] != 0) x = vec_add(x, vec_scale(a[j], out.units[j]));
                if (cc.contains(x)) {
                    out.hilbert.push_back(x);
                    found = true;
                }
            });
        }
        if (!found)
            throw EnumerationLimit("no in-cone lift of a quotient Hilbert element within search radius");
    }

    std::sort(out.hilbert.begin(), out.hilbert.end(), lex_less);
    return out;
}

} // namespace logdiv
