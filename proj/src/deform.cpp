#include "logdiv/deform.hpp"

#include <algorithm>
#include <map>

namespace logdiv {

namespace {

void check_parent(const FsMonoid& base, const MonoidIdeal& ideal, const char* which) {
    if (ideal.parent.ambient() != base.ambient() || !ideal.parent.same_submonoid(base))
        throw DomainError("SourceMismatch", std::string("ideal ") + which + " does not live in the given base monoid");
}

/// All base monomials with lex-minimal Hilbert-expansion degree <= deg_max.
class MonomialTable {
public:
    MonomialTable(const FsMonoid& p, int deg_max) {
        if (!p.is_sharp())
            throw DomainError("NotSharp", "monomial enumeration requires a sharp base monoid");
        const std::vector<Vec>& hb = p.hilbert();
        Vec acc(p.ambient().coords(), Int(0));
        enumerate(p, hb, 0, 0, deg_max, acc);
        for (const auto& [m, d] : degree_) sorted_.push_back(m);
        std::sort(sorted_.begin(), sorted_.end(), lex_less);
    }

    const std::vector<Vec>& monomials() const { return sorted_; }

    int degree(const Vec& m) const {
        auto it = degree_.find(m);
        if (it == degree_.end())
            throw DomainError("InternalInvariant", "monomial missing from degree table");
        return it->second;
    }

private:
    // Coefficient vectors visited in ascending lex order, so the first
    // expansion reaching a value is the lex-minimal one.
    void enumerate(const FsMonoid& p, const std::vector<Vec>& hb, std::size_t idx, int used, int deg_max,
                   Vec& acc) {
        if (idx == hb.size()) {
            Vec key = p.ambient().normalized(acc);
            degree_.emplace(key, used); // keeps the first (lex-minimal) expansion
            return;
        }
        Vec saved = acc;
        for (int c = 0; used + c <= deg_max; ++c) {
            enumerate(p, hb, idx + 1, used + c, deg_max, acc);
            acc = vec_add(acc, hb[idx]);
        }
        acc = saved;
    }

    std::map<Vec, int> degree_;
    std::vector<Vec> sorted_;
};

/// Is m in the n-th power of the ideal generated by gens (power 0 = whole
/// monoid)? Checked by enumerating multisets of n generators.
bool in_ideal_power(const FsMonoid& p, const std::vector<Vec>& gens, int n, const Vec& m) {
    if (n <= 0) return p.contains(m);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Vec rest = vec_sub(m, gens[i]);
        // multisets: next factor drawn from gens[i..] to avoid repeats
        std::vector<Vec> tail(gens.begin() + i, gens.end());
        if (in_ideal_power(p, tail, n - 1, rest)) return true;
    }
    return false;
}

/// m in inner * outer^(n-1)?
bool in_mixed_power(const FsMonoid& p, const std::vector<Vec>& inner, const std::vector<Vec>& outer, int n,
                    const Vec& m) {
    for (const Vec& g : inner)
        if (in_ideal_power(p, outer, n - 1, vec_sub(m, g))) return true;
    return false;
}

} // namespace

DeformationMonoid deformation_monoid(const FsMonoid& base, const MonoidIdeal& ideal) {
    check_parent(base, ideal, "center");
    if (ideal.generators.empty()) throw DomainError("EmptyIdeal", "deformation requires a nonempty ideal");
    if (!base.is_saturated()) throw DomainError("NotSaturated", "deformation base must be saturated");

    DirectSum ds = direct_sum(base.ambient(), Ambient{1, {}});
    Vec t = mat_apply(ds.emb2, Vec{Int(1)});

    std::vector<Vec> gens;
    for (const Vec& p : base.generators()) gens.push_back(mat_apply(ds.emb1, p));
    gens.push_back(t);
    for (const Vec& i : ideal.generators) gens.push_back(vec_sub(mat_apply(ds.emb1, i), t));

    FsMonoid rees_raw(ds.sum, gens);
    FsMonoid rees = rees_raw.saturation();

    bool degenerate = false;
    for (const Vec& i : ideal.generators)
        if (base.contains(vec_neg(i))) { degenerate = true; break; }

    return DeformationMonoid{base,     ideal, ds.sum, ds.emb1, std::move(t), std::move(rees_raw),
                             std::move(rees), degenerate};
}

GenericFiber fiber_generic(const DeformationMonoid& d) {
    std::vector<Vec> loc_gens = d.rees.generators();
    loc_gens.push_back(vec_neg(d.t));
    FsMonoid loc(d.total, std::move(loc_gens));

    std::vector<Vec> ref_gens;
    for (const Vec& p : d.base.generators()) ref_gens.push_back(mat_apply(d.emb_base, p));
    ref_gens.push_back(d.t);
    ref_gens.push_back(vec_neg(d.t));
    FsMonoid ref(d.total, std::move(ref_gens));

    bool iso = loc.same_submonoid(ref);
    return GenericFiber{std::move(loc), std::move(ref), iso};
}

std::vector<std::vector<Vec>> fiber_zero_pieces(const DeformationMonoid& d, int n_max, int deg_max) {
    if (n_max < 1 || deg_max < 1)
        throw DomainError("InvalidArgument", "slice bounds must be at least 1");
    MonomialTable table(d.base, deg_max);
    const std::vector<Vec>& igens = d.ideal.generators;
    std::vector<std::vector<Vec>> slices(std::size_t(n_max) + 1);
    for (const Vec& m : table.monomials())
        for (int n = 0; n <= n_max; ++n) {
            if (!in_ideal_power(d.base, igens, n, m)) continue;
            if (in_ideal_power(d.base, igens, n + 1, m)) continue;
            slices[std::size_t(n)].push_back(m);
            break; // slices are disjoint by construction
        }
    return slices;
}

SquareCheckReport deform_square_check(const FsMonoid& base, const MonoidIdeal& inner,
                                      const MonoidIdeal& outer, int n_max, int deg_max) {
    check_parent(base, inner, "inner");
    check_parent(base, outer, "outer");
    if (inner.generators.empty() || outer.generators.empty())
        throw DomainError("EmptyIdeal", "square check requires nonempty ideals");
    if (n_max < 1 || deg_max < 1)
        throw DomainError("InvalidArgument", "bounds must be at least 1");
    for (const Vec& g : inner.generators) {
        bool inside = false;
        for (const Vec& j : outer.generators)
            if (base.contains(vec_sub(g, j))) { inside = true; break; }
        if (!inside)
            throw DomainError("NotNested", "inner ideal generator " + vec_to_string(g) +
                                               " is not in the outer ideal");
    }

    MonomialTable table(base, deg_max);
    SquareCheckReport report;
    for (int n = 1; n <= n_max; ++n) {
        SquareCheckRow row;
        row.n = n;
        for (const Vec& m : table.monomials()) {
            if (!in_ideal_power(base, outer.generators, n, m)) continue;
            bool in_left_kernel = in_mixed_power(base, inner.generators, outer.generators, n, m);
            bool in_right_kernel = in_ideal_power(base, inner.generators, 1, m);
            // inner*outer^(n-1) is contained in outer^n ∩ inner, so the only
            // possible disagreement is right-kernel without left-kernel.
            if (in_right_kernel && !in_left_kernel) row.witnesses.push_back(m);
        }
        row.equal = row.witnesses.empty();
        if (!row.equal) report.all_equal = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace logdiv
