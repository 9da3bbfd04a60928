#pragma once

#include "logdiv/fan.hpp"

#include <utility>
#include <vector>

namespace logdiv {

/// Face-closed subset of a fan (an open subfan), stored by the maximal
/// cones of the subset; the subfan consists of all their faces.
struct OpenSubfan {
    Fan parent;
    std::vector<Cone> max_cones;
};

/// Validates that every listed cone is a cone of the parent fan, drops
/// non-maximal entries, sorts canonically. Error: InvalidGluing.
OpenSubfan make_open_subfan(const Fan& parent, std::vector<Cone> cones);

/// All cones of the subfan (faces of the maximal ones), deduplicated.
std::vector<Cone> subfan_faces(const OpenSubfan& open);

bool subfan_contains_cone(const OpenSubfan& open, const Cone& c);

/// Intersection of two subfans of the same parent.
OpenSubfan intersect_opens(const OpenSubfan& a, const OpenSubfan& b);

/// One directed overlap datum: the subfan of chart `i` glued into chart `j`
/// by the unimodular transition matrix. The reverse direction may be listed
/// too (then it must be the inverse) or is synthesized.
struct OverlapDatum {
    int i = 0;
    int j = 0;
    std::vector<Cone> cones; // max cones of U_ij inside chart i
    IntMatrix transition;    // chart i coords -> chart j coords
};

struct FanSpaceData {
    std::vector<Fan> charts;
    std::vector<OverlapDatum> overlaps;
};

struct GluingValidation {
    bool ok = true;
    std::string message;
};

/// Cone of a specific chart, for space-level queries.
struct ChartCone {
    int chart = 0;
    Cone cone;
};

/// Open subset of a fan space: max cones per chart.
struct ChartOpen {
    int chart = 0;
    std::vector<Cone> max_cones;
};

/// Fans glued along open subfans by unimodular transitions. Construction
/// validates the gluing conditions: (i) self-overlaps are the whole chart
/// with identity transition, (ii) opposite overlap data are inverse to each
/// other, (iii) triple-overlap cocycle compatibility. Points of the space
/// are orbits of chart cones under the transitions.
class FanSpace {
public:
    /// Non-throwing check of conditions (i)-(iii); names the failing
    /// condition and indices on defect.
    static GluingValidation validate(const FanSpaceData& data);

    /// Error: InvalidGluing with the defect message.
    explicit FanSpace(FanSpaceData data);

    const std::vector<Fan>& charts() const { return charts_; }

    int orbit_count() const { return static_cast<int>(orbits_.size()); }

    /// Members of each orbit, canonically ordered.
    const std::vector<std::vector<ChartCone>>& orbits() const { return orbits_; }

    /// Orbit index of a cone of a chart. Error: InvalidArgument if the cone
    /// is not a face of the chart.
    int orbit_of(int chart, const Cone& cone) const;

private:
    std::vector<Fan> charts_;
    std::vector<OverlapDatum> overlaps_; // normalized: both directions present
    std::vector<std::vector<ChartCone>> orbits_;
};

/// True iff every orbit of the space meets one of the listed opens.
bool is_cover(const FanSpace& space, const std::vector<ChartOpen>& opens);

/// Union of opens, saturated under the gluing (a cone is included exactly
/// when its orbit meets some listed open). Idempotent, commutative,
/// monotone join.
struct SpaceSubset {
    std::vector<ChartOpen> per_chart; // one entry per chart of the space
    std::vector<int> orbit_ids;       // sorted orbit indices covered
};

SpaceSubset union_opens(const FanSpace& space, const std::vector<ChartOpen>& opens);

} // namespace logdiv
