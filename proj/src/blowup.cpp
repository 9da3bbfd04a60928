#include "logdiv/blowup.hpp"

#include <algorithm>

namespace logdiv {

namespace {

std::vector<Vec> canonical_gens(std::vector<Vec> gens) {
    for (Vec& g : gens)
        if (g.empty()) throw DomainError("ShapeMismatch", "empty ideal generator");
    std::sort(gens.begin(), gens.end(), lex_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty()) throw DomainError("EmptyIdeal", "blow-up requires a nonempty ideal");
    return gens;
}

} // namespace

BlowupResult log_blowup(const Fan& base, const std::vector<Vec>& ideal_gens) {
    if (base.max_cones().size() != 1)
        throw DomainError("Unsupported", "blow-up requires an affine base fan (exactly one maximal cone)");
    const Cone& sigma = base.max_cones()[0];
    const int rank = base.ambient_rank();
    std::vector<Vec> gens = canonical_gens(ideal_gens);
    for (const Vec& g : gens) {
        if (static_cast<int>(g.size()) != rank)
            throw DomainError("ShapeMismatch", "ideal generator has wrong length");
        for (const Vec& r : sigma.rays())
            if (dot(g, r) < 0)
                throw DomainError("SourceMismatch",
                                  "ideal generator " + vec_to_string(g) + " is not in the chart monoid");
    }

    // Domain of linearity of generator i: the part of sigma where <g_i, .>
    // attains the minimum.
    std::vector<Cone> regions;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        ConeConstraints cc;
        cc.dim = rank;
        cc.ineqs = sigma.facet_normals();
        cc.eqs = sigma.span_equations();
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) cc.ineqs.push_back(vec_sub(gens[j], gens[i]));
        ConeGenerators cg = generators_from_constraints(cc);
        if (!cg.lineality.empty())
            throw DomainError("InternalInvariant", "linearity region of a pointed cone contains a line");
        regions.push_back(Cone::from_generators(rank, cg.rays));
    }
    std::sort(regions.begin(), regions.end(), cone_less);
    regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
    std::vector<Cone> maximal;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < regions.size(); ++j)
            if (i != j && regions[j].contains_cone(regions[i]) && !(regions[i] == regions[j])) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(regions[i]);
    }
    Fan fine(rank, std::move(maximal));
    if (!is_subdivision(fine, base))
        throw DomainError("InternalInvariant", "blow-up regions did not assemble into a subdivision");

    BlowupResult res{base, std::move(fine), std::move(gens), {}};
    for (const Cone& piece : res.subdivision.max_cones()) {
        std::optional<Vec> g = ideal_pullback_principal(res.generators, piece);
        if (!g)
            throw DomainError("InternalInvariant", "no generator dominates a blow-up piece");
        res.minimal_generator.push_back(*g);
    }
    return res;
}

BlowupResult log_blowup(const Fan& base, const MonoidIdeal& ideal) {
    return log_blowup(base, ideal.generators);
}

std::optional<Vec> ideal_pullback_principal(const std::vector<Vec>& ideal_gens, const Cone& cone) {
    std::vector<Vec> gens = canonical_gens(ideal_gens);
    for (const Vec& g : gens) {
        if (static_cast<int>(g.size()) != cone.ambient_rank())
            throw DomainError("ShapeMismatch", "ideal generator has wrong length");
        bool dominates = true;
        for (const Vec& other : gens) {
            Vec diff = vec_sub(other, g);
            for (const Vec& r : cone.rays())
                if (dot(diff, r) < 0) { dominates = false; break; }
            if (!dominates) break;
        }
        if (dominates) return g;
    }
    return std::nullopt;
}

} // namespace logdiv
