#include "logdiv/io.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace logdiv {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
    throw ValidationError(path, message);
}

void check_object(const Json& v, const std::string& path) {
    if (!v.is_object()) invalid(path, "expected an object");
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) { ok = true; break; }
        if (!ok) invalid(path + "." + item.key(), "unknown field");
    }
}

const Json& get_field(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) invalid(path + "." + key, "missing field");
    return *it;
}

void check_doc_header(const Json& doc, const char* kind, const std::string& path) {
    check_object(doc, path);
    const Json& k = get_field(doc, "kind", path);
    if (!k.is_string() || k.get<std::string>() != kind)
        invalid(path + ".kind", std::string("expected kind \"") + kind + "\"");
    const Json& v = get_field(doc, "version", path);
    if (!v.is_string() || v.get<std::string>() != "1") invalid(path + ".version", "expected version \"1\"");
}

int int32_from_json(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) invalid(path, "expected a small integer");
    long long x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        invalid(path, "integer out of range");
    return static_cast<int>(x);
}

} // namespace

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? static_cast<std::size_t>(e.byte) - 1 : 0;
        if (byte > text.size()) byte = text.size();
        long line = 1, col = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, e.what());
    }
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Int int_from_json(const Json& v, const std::string& path) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
        return Int(v.get<long long>());
    }
    if (v.is_number_float())
        invalid(path, "non-integral or oversized number; quote big integers as decimal strings");
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (start == s.size()) invalid(path, "not a decimal integer");
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) invalid(path, "not a decimal integer");
        return Int(s);
    }
    invalid(path, "expected an integer (number or decimal string)");
}

Json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

Vec vec_from_json(const Json& v, const std::string& path, int expected_len) {
    if (!v.is_array()) invalid(path, "expected an array of integers");
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(int_from_json(v[i], path + "[" + std::to_string(i) + "]"));
    if (expected_len >= 0 && static_cast<int>(out.size()) != expected_len)
        invalid(path, "expected " + std::to_string(expected_len) + " entries");
    return out;
}

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const Int& x : v) out.push_back(int_to_json(x));
    return out;
}

IntMatrix matrix_from_json(const Json& v, const std::string& path) {
    if (!v.is_array()) invalid(path, "expected an array of rows");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back(vec_from_json(v[i], path + "[" + std::to_string(i) + "]",
                                     rows.empty() ? -1 : static_cast<int>(rows[0].size())));
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    return IntMatrix::from_rows(cols, rows);
}

Json matrix_to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i)));
    return out;
}

FsMonoid monoid_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "monoid", path);
    check_keys(doc, path, {"kind", "version", "free_rank", "torsion", "generators"});
    Ambient amb;
    amb.free_rank = int32_from_json(get_field(doc, "free_rank", path), path + ".free_rank");
    if (amb.free_rank < 0) invalid(path + ".free_rank", "must be nonnegative");
    if (doc.contains("torsion")) {
        const Json& t = doc["torsion"];
        if (!t.is_array()) invalid(path + ".torsion", "expected an array");
        for (std::size_t i = 0; i < t.size(); ++i) {
            Int d = int_from_json(t[i], path + ".torsion[" + std::to_string(i) + "]");
            if (d < 2) invalid(path + ".torsion[" + std::to_string(i) + "]", "moduli must be at least 2");
            amb.torsion.push_back(d);
        }
    }
    const Json& g = get_field(doc, "generators", path);
    if (!g.is_array()) invalid(path + ".generators", "expected an array of vectors");
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < g.size(); ++i)
        gens.push_back(vec_from_json(g[i], path + ".generators[" + std::to_string(i) + "]", amb.coords()));
    return FsMonoid(std::move(amb), std::move(gens));
}

Json monoid_to_doc(const FsMonoid& m) {
    Json doc;
    doc["kind"] = "monoid";
    doc["version"] = "1";
    doc["free_rank"] = m.ambient().free_rank;
    Json t = Json::array();
    for (const Int& d : m.ambient().torsion) t.push_back(int_to_json(d));
    doc["torsion"] = std::move(t);
    Json g = Json::array();
    for (const Vec& v : m.generators()) g.push_back(vec_to_json(v));
    doc["generators"] = std::move(g);
    return doc;
}

MonoidHom hom_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "hom", path);
    check_keys(doc, path, {"kind", "version", "source", "target", "matrix"});
    FsMonoid source = monoid_from_doc(get_field(doc, "source", path), path + ".source");
    FsMonoid target = monoid_from_doc(get_field(doc, "target", path), path + ".target");
    IntMatrix matrix = matrix_from_json(get_field(doc, "matrix", path), path + ".matrix");
    return make_hom(std::move(source), std::move(target), std::move(matrix));
}

Json hom_to_doc(const MonoidHom& h) {
    Json doc;
    doc["kind"] = "hom";
    doc["version"] = "1";
    doc["source"] = monoid_to_doc(h.source);
    doc["target"] = monoid_to_doc(h.target);
    doc["matrix"] = matrix_to_json(h.matrix);
    return doc;
}

RawFanData raw_fan_data_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "fan", path);
    check_keys(doc, path, {"kind", "version", "ambient_rank", "max_cones"});
    RawFanData raw;
    raw.ambient_rank = int32_from_json(get_field(doc, "ambient_rank", path), path + ".ambient_rank");
    if (raw.ambient_rank < 0) invalid(path + ".ambient_rank", "must be nonnegative");
    const Json& mc = get_field(doc, "max_cones", path);
    if (!mc.is_array()) invalid(path + ".max_cones", "expected an array of cones");
    for (std::size_t i = 0; i < mc.size(); ++i) {
        const Json& cone = mc[i];
        const std::string cpath = path + ".max_cones[" + std::to_string(i) + "]";
        if (!cone.is_array()) invalid(cpath, "expected an array of rays");
        std::vector<Vec> rays;
        for (std::size_t r = 0; r < cone.size(); ++r) {
            Vec ray = vec_from_json(cone[r], cpath + "[" + std::to_string(r) + "]", raw.ambient_rank);
            if (is_zero_vec(ray)) invalid(cpath + "[" + std::to_string(r) + "]", "rays must be nonzero");
            rays.push_back(std::move(ray));
        }
        raw.cones.push_back(std::move(rays));
    }
    return raw;
}

Fan fan_from_doc(const Json& doc, const std::string& path) {
    RawFanData raw = raw_fan_data_from_doc(doc, path);
    std::vector<Cone> cones;
    for (const std::vector<Vec>& rays : raw.cones) cones.push_back(Cone::from_rays(raw.ambient_rank, rays));
    return Fan(raw.ambient_rank, std::move(cones));
}

Json fan_to_doc(const Fan& f) {
    Json doc;
    doc["kind"] = "fan";
    doc["version"] = "1";
    doc["ambient_rank"] = f.ambient_rank();
    Json mc = Json::array();
    for (const Cone& c : f.max_cones()) {
        Json rays = Json::array();
        for (const Vec& r : c.rays()) rays.push_back(vec_to_json(r));
        mc.push_back(std::move(rays));
    }
    doc["max_cones"] = std::move(mc);
    return doc;
}

Subdivision subdivision_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "subdivision", path);
    check_keys(doc, path, {"kind", "version", "base", "fine"});
    Fan base = fan_from_doc(get_field(doc, "base", path), path + ".base");
    Fan fine = fan_from_doc(get_field(doc, "fine", path), path + ".fine");
    return make_subdivision(std::move(base), std::move(fine));
}

Json subdivision_to_doc(const Subdivision& s) {
    Json doc;
    doc["kind"] = "subdivision";
    doc["version"] = "1";
    doc["base"] = fan_to_doc(s.base);
    doc["fine"] = fan_to_doc(s.fine);
    return doc;
}

MonoidIdeal ideal_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "ideal", path);
    check_keys(doc, path, {"kind", "version", "monoid", "generators"});
    FsMonoid parent = monoid_from_doc(get_field(doc, "monoid", path), path + ".monoid");
    const Json& g = get_field(doc, "generators", path);
    if (!g.is_array()) invalid(path + ".generators", "expected an array of vectors");
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < g.size(); ++i)
        gens.push_back(vec_from_json(g[i], path + ".generators[" + std::to_string(i) + "]",
                                     parent.ambient().coords()));
    return make_ideal(std::move(parent), std::move(gens));
}

Json ideal_to_doc(const MonoidIdeal& i) {
    Json doc;
    doc["kind"] = "ideal";
    doc["version"] = "1";
    doc["monoid"] = monoid_to_doc(i.parent);
    Json g = Json::array();
    for (const Vec& v : i.generators) g.push_back(vec_to_json(v));
    doc["generators"] = std::move(g);
    return doc;
}

DividedMorphismRep rep_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "rep", path);
    check_keys(doc, path, {"kind", "version", "source", "target", "matrix", "fine"});
    Fan source = fan_from_doc(get_field(doc, "source", path), path + ".source");
    Fan target = fan_from_doc(get_field(doc, "target", path), path + ".target");
    IntMatrix matrix = matrix_from_json(get_field(doc, "matrix", path), path + ".matrix");
    Fan fine = fan_from_doc(get_field(doc, "fine", path), path + ".fine");
    Subdivision sub = make_subdivision(source, std::move(fine));
    make_fan_morphism(sub.fine, target, matrix); // certificate must be an honest morphism
    return DividedMorphismRep{std::move(source), std::move(sub), std::move(target), std::move(matrix)};
}

Json rep_to_doc(const DividedMorphismRep& r) {
    Json doc;
    doc["kind"] = "rep";
    doc["version"] = "1";
    doc["source"] = fan_to_doc(r.source);
    doc["target"] = fan_to_doc(r.target);
    doc["matrix"] = matrix_to_json(r.matrix);
    doc["fine"] = fan_to_doc(r.source_subdivision.fine);
    return doc;
}

FanSpaceData space_from_doc(const Json& doc, const std::string& path) {
    check_doc_header(doc, "space", path);
    check_keys(doc, path, {"kind", "version", "charts", "overlaps"});
    FanSpaceData data;
    const Json& charts = get_field(doc, "charts", path);
    if (!charts.is_array()) invalid(path + ".charts", "expected an array of fans");
    for (std::size_t i = 0; i < charts.size(); ++i)
        data.charts.push_back(fan_from_doc(charts[i], path + ".charts[" + std::to_string(i) + "]"));
    const Json& overlaps = get_field(doc, "overlaps", path);
    if (!overlaps.is_array()) invalid(path + ".overlaps", "expected an array of overlaps");
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
        const Json& o = overlaps[k];
        const std::string opath = path + ".overlaps[" + std::to_string(k) + "]";
        check_object(o, opath);
        check_keys(o, opath, {"i", "j", "cones", "transition"});
        OverlapDatum d;
        d.i = int32_from_json(get_field(o, "i", opath), opath + ".i");
        d.j = int32_from_json(get_field(o, "j", opath), opath + ".j");
        if (d.i < 0 || d.i >= static_cast<int>(data.charts.size()))
            invalid(opath + ".i", "chart index out of range");
        if (d.j < 0 || d.j >= static_cast<int>(data.charts.size()))
            invalid(opath + ".j", "chart index out of range");
        const int rank = data.charts[std::size_t(d.i)].ambient_rank();
        const Json& cones = get_field(o, "cones", opath);
        if (!cones.is_array()) invalid(opath + ".cones", "expected an array of cones");
        for (std::size_t c = 0; c < cones.size(); ++c) {
            const Json& cone = cones[c];
            const std::string cpath = opath + ".cones[" + std::to_string(c) + "]";
            if (!cone.is_array()) invalid(cpath, "expected an array of rays");
            std::vector<Vec> rays;
            for (std::size_t r = 0; r < cone.size(); ++r)
                rays.push_back(vec_from_json(cone[r], cpath + "[" + std::to_string(r) + "]", rank));
            d.cones.push_back(Cone::from_rays(rank, std::move(rays)));
        }
        d.transition = matrix_from_json(get_field(o, "transition", opath), opath + ".transition");
        data.overlaps.push_back(std::move(d));
    }
    return data;
}

Json space_to_doc(const FanSpaceData& d) {
    Json doc;
    doc["kind"] = "space";
    doc["version"] = "1";
    Json charts = Json::array();
    for (const Fan& f : d.charts) charts.push_back(fan_to_doc(f));
    doc["charts"] = std::move(charts);
    std::vector<OverlapDatum> sorted = d.overlaps;
    std::sort(sorted.begin(), sorted.end(), [](const OverlapDatum& a, const OverlapDatum& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    Json overlaps = Json::array();
    for (const OverlapDatum& o : sorted) {
        Json e;
        e["i"] = o.i;
        e["j"] = o.j;
        std::vector<Cone> cones = o.cones;
        std::sort(cones.begin(), cones.end(), cone_less);
        Json cj = Json::array();
        for (const Cone& c : cones) {
            Json rays = Json::array();
            for (const Vec& r : c.rays()) rays.push_back(vec_to_json(r));
            cj.push_back(std::move(rays));
        }
        e["cones"] = std::move(cj);
        e["transition"] = matrix_to_json(o.transition);
        overlaps.push_back(std::move(e));
    }
    doc["overlaps"] = std::move(overlaps);
    return doc;
}

} // namespace logdiv
