#include "logdiv/fanspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace logdiv {

namespace {

std::string overlap_name(int i, int j) {
    std::ostringstream os;
    os << "(" << i << "," << j << ")";
    return os.str();
}

Cone map_cone(const Cone& c, const IntMatrix& m, int target_rank) {
    std::vector<Vec> gens;
    for (const Vec& r : c.rays()) gens.push_back(mat_apply(m, r));
    return Cone::from_generators(target_rank, gens);
}

bool is_cone_of(const Fan& f, const Cone& c) {
    for (const Cone& m : f.max_cones())
        if (c.is_face_of(m)) return true;
    return false;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct NormalizedGluing {
    std::vector<Fan> charts;
    std::vector<OverlapDatum> overlaps; // both directions, nonempty cone lists only
    std::string defect;                 // empty when ok
};

NormalizedGluing normalize_gluing(const FanSpaceData& data) {
    NormalizedGluing out;
    out.charts = data.charts;
    const int nc = static_cast<int>(data.charts.size());
    for (int i = 1; i < nc; ++i)
        if (data.charts[i].ambient_rank() != data.charts[0].ambient_rank()) {
            out.defect = "charts have different ambient ranks";
            return out;
        }
    const int rank = nc ? data.charts[0].ambient_rank() : 0;

    std::map<std::pair<int, int>, OverlapDatum> directed;
    for (const OverlapDatum& o : data.overlaps) {
        if (o.i < 0 || o.i >= nc || o.j < 0 || o.j >= nc) {
            out.defect = "overlap " + overlap_name(o.i, o.j) + " references a missing chart";
            return out;
        }
        if (o.i == o.j) {
            // Condition (i): the self-overlap is the whole chart with the
            // identity transition.
            std::vector<Cone> listed = o.cones;
            std::sort(listed.begin(), listed.end(), cone_less);
            if (!(listed == data.charts[o.i].max_cones()) || !o.transition.is_identity()) {
                out.defect = "condition (i) fails for chart " + std::to_string(o.i) +
                             ": self-overlap must be the whole chart with identity transition";
                return out;
            }
            continue;
        }
        if (o.cones.empty()) continue; // empty overlap: nothing to glue
        if (!directed.emplace(std::make_pair(o.i, o.j), o).second) {
            out.defect = "duplicate overlap " + overlap_name(o.i, o.j);
            return out;
        }
    }

    // Per-direction checks and image computation.
    std::map<std::pair<int, int>, OpenSubfan> open_of;
    std::map<std::pair<int, int>, std::vector<Cone>> image_of;
    for (auto& [key, o] : directed) {
        if (o.transition.rows() != rank || o.transition.cols() != rank || !is_unimodular(o.transition)) {
            out.defect = "transition for overlap " + overlap_name(o.i, o.j) + " is not unimodular";
            return out;
        }
        try {
            open_of.emplace(key, make_open_subfan(data.charts[o.i], o.cones));
        } catch (const DomainError& e) {
            out.defect = "overlap " + overlap_name(o.i, o.j) + ": " + e.what();
            return out;
        }
        std::vector<Cone> images;
        for (const Cone& c : open_of.at(key).max_cones) {
            Cone img = map_cone(c, o.transition, rank);
            if (!is_cone_of(data.charts[o.j], img)) {
                out.defect = "condition (ii) fails: transition " + overlap_name(o.i, o.j) +
                             " maps a cone outside chart " + std::to_string(o.j);
                return out;
            }
            images.push_back(std::move(img));
        }
        std::sort(images.begin(), images.end(), cone_less);
        image_of.emplace(key, std::move(images));
    }

    // Condition (ii): opposite data inverse to each other; synthesize the
    // missing direction.
    std::map<std::pair<int, int>, OverlapDatum> full = directed;
    for (const auto& [key, o] : directed) {
        auto rev_key = std::make_pair(o.j, o.i);
        IntMatrix inv = inverse_unimodular(o.transition);
        auto rev = directed.find(rev_key);
        if (rev == directed.end()) {
            OverlapDatum synth;
            synth.i = o.j;
            synth.j = o.i;
            synth.cones = image_of.at(key);
            synth.transition = inv;
            full.emplace(rev_key, synth);
            open_of.emplace(rev_key, make_open_subfan(data.charts[o.j], image_of.at(key)));
        } else {
            if (!(rev->second.transition == inv)) {
                out.defect = "condition (ii) fails: transitions for " + overlap_name(o.i, o.j) + " and " +
                             overlap_name(o.j, o.i) + " are not inverse";
                return out;
            }
            if (!(open_of.at(rev_key).max_cones == image_of.at(key))) {
                out.defect = "condition (ii) fails: overlap " + overlap_name(o.j, o.i) +
                             " is not the image of overlap " + overlap_name(o.i, o.j);
                return out;
            }
        }
    }

    // Condition (iii): cocycle on triple overlaps.
    for (const auto& [kij, oij] : full) {
        const int i = kij.first, j = kij.second;
        for (const auto& [kik, oik] : full) {
            if (kik.first != i) continue;
            const int k = kik.second;
            if (k == j) continue;
            OpenSubfan inter = intersect_opens(open_of.at(kij), open_of.at(kik));
            if (inter.max_cones.empty()) continue;
            auto kjk = full.find(std::make_pair(j, k));
            if (kjk == full.end()) {
                out.defect = "condition (iii) fails: charts " + std::to_string(j) + " and " +
                             std::to_string(k) + " are not glued but meet through chart " + std::to_string(i);
                return out;
            }
            for (const Cone& c : inter.max_cones) {
                Cone img = map_cone(c, oij.transition, rank);
                if (!subfan_contains_cone(open_of.at(kjk->first), img)) {
                    out.defect = "condition (iii) fails: transition " + overlap_name(i, j) +
                                 " does not carry the triple overlap with chart " + std::to_string(k) +
                                 " into overlap " + overlap_name(j, k);
                    return out;
                }
                for (const Vec& r : c.rays()) {
                    Vec via = mat_apply(kjk->second.transition, mat_apply(oij.transition, r));
                    Vec direct = mat_apply(oik.transition, r);
                    if (via != direct) {
                        out.defect = "condition (iii) fails: cocycle mismatch on triple (" +
                                     std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                                     ") at ray " + vec_to_string(r);
                        return out;
                    }
                }
            }
        }
    }

    for (const auto& [key, o] : full) out.overlaps.push_back(o);
    return out;
}

} // namespace

OpenSubfan make_open_subfan(const Fan& parent, std::vector<Cone> cones) {
    for (const Cone& c : cones) {
        bool found = false;
        for (const Cone& m : parent.max_cones())
            if (c.is_face_of(m)) { found = true; break; }
        if (!found)
            throw DomainError("InvalidGluing", "listed cone is not a cone of the parent fan");
    }
    return OpenSubfan{parent, maximal_pieces(std::move(cones))};
}

std::vector<Cone> subfan_faces(const OpenSubfan& open) {
    std::set<std::vector<Vec>> seen;
    std::vector<Cone> out;
    for (const Cone& c : open.max_cones) {
        std::vector<Cone> fs = c.faces();
        for (Cone& f : fs)
            if (seen.insert(f.rays()).second) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), cone_less);
    return out;
}

bool subfan_contains_cone(const OpenSubfan& open, const Cone& c) {
    for (const Cone& m : open.max_cones)
        if (c.is_face_of(m)) return true;
    return false;
}

OpenSubfan intersect_opens(const OpenSubfan& a, const OpenSubfan& b) {
    if (!(a.parent == b.parent))
        throw DomainError("SourceMismatch", "intersecting subfans of different parents");
    std::vector<Cone> pieces;
    for (const Cone& c : a.max_cones)
        for (const Cone& d : b.max_cones) pieces.push_back(c.intersect(d));
    return OpenSubfan{a.parent, maximal_pieces(std::move(pieces))};
}

GluingValidation FanSpace::validate(const FanSpaceData& data) {
    NormalizedGluing n = normalize_gluing(data);
    return GluingValidation{n.defect.empty(), n.defect};
}

FanSpace::FanSpace(FanSpaceData data) {
    NormalizedGluing n = normalize_gluing(data);
    if (!n.defect.empty()) throw DomainError("InvalidGluing", n.defect);
    charts_ = std::move(n.charts);
    overlaps_ = std::move(n.overlaps);

    // Orbits of chart cones under the transitions.
    std::map<std::pair<int, std::vector<Vec>>, int> node_id;
    std::vector<ChartCone> nodes;
    for (int i = 0; i < static_cast<int>(charts_.size()); ++i)
        for (const Cone& f : charts_[i].all_faces()) {
            node_id.emplace(std::make_pair(i, f.rays()), static_cast<int>(nodes.size()));
            nodes.push_back(ChartCone{i, f});
        }
    Dsu dsu(static_cast<int>(nodes.size()));
    const int rank = charts_.empty() ? 0 : charts_[0].ambient_rank();
    for (const OverlapDatum& o : overlaps_) {
        OpenSubfan open = make_open_subfan(charts_[o.i], o.cones);
        for (const Cone& f : subfan_faces(open)) {
            Cone img = map_cone(f, o.transition, rank);
            dsu.unite(node_id.at({o.i, f.rays()}), node_id.at({o.j, img.rays()}));
        }
    }
    std::map<int, std::vector<ChartCone>> groups;
    for (int v = 0; v < static_cast<int>(nodes.size()); ++v) groups[dsu.find(v)].push_back(nodes[v]);
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(), [](const ChartCone& a, const ChartCone& b) {
            if (a.chart != b.chart) return a.chart < b.chart;
            return cone_less(a.cone, b.cone);
        });
        orbits_.push_back(std::move(members));
    }
    std::sort(orbits_.begin(), orbits_.end(), [](const auto& a, const auto& b) {
        if (a[0].chart != b[0].chart) return a[0].chart < b[0].chart;
        return cone_less(a[0].cone, b[0].cone);
    });
}

int FanSpace::orbit_of(int chart, const Cone& cone) const {
    for (int k = 0; k < static_cast<int>(orbits_.size()); ++k)
        for (const ChartCone& m : orbits_[k])
            if (m.chart == chart && m.cone == cone) return k;
    throw DomainError("InvalidArgument", "cone is not a face of chart " + std::to_string(chart));
}

namespace {

std::vector<bool> covered_orbits(const FanSpace& space, const std::vector<ChartOpen>& opens) {
    std::vector<bool> hit(space.orbit_count(), false);
    for (const ChartOpen& o : opens) {
        if (o.chart < 0 || o.chart >= static_cast<int>(space.charts().size()))
            throw DomainError("InvalidArgument", "open references a missing chart");
        OpenSubfan open = make_open_subfan(space.charts()[o.chart], o.max_cones);
        for (const Cone& f : subfan_faces(open)) hit[std::size_t(space.orbit_of(o.chart, f))] = true;
    }
    return hit;
}

} // namespace

bool is_cover(const FanSpace& space, const std::vector<ChartOpen>& opens) {
    std::vector<bool> hit = covered_orbits(space, opens);
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SpaceSubset union_opens(const FanSpace& space, const std::vector<ChartOpen>& opens) {
    std::vector<bool> hit = covered_orbits(space, opens);
    SpaceSubset out;
    for (int i = 0; i < static_cast<int>(space.charts().size()); ++i) {
        std::vector<Cone> cones;
        for (const Cone& f : space.charts()[i].all_faces())
            if (hit[std::size_t(space.orbit_of(i, f))]) cones.push_back(f);
        out.per_chart.push_back(ChartOpen{i, maximal_pieces(std::move(cones))});
    }
    for (int k = 0; k < space.orbit_count(); ++k)
        if (hit[std::size_t(k)]) out.orbit_ids.push_back(k);
    return out;
}

} // namespace logdiv
