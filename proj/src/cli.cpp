#include "logdiv/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace logdiv {

namespace {

struct Flags {
    std::string output = "json";
    bool trace = false;
    std::optional<Vec> ray;
    std::optional<IntMatrix> matrix;
    int cone = 0;
    int n_max = 3;
    int deg_max = 6;
    std::optional<Json> opens;
};

Flags parse_flags(const Json& flags) {
    if (!flags.is_object()) throw ValidationError("$flags", "expected an object");
    Flags out;
    for (const auto& item : flags.items()) {
        const std::string& k = item.key();
        const Json& v = item.value();
        if (k == "output") {
            if (!v.is_string() || (v != "json" && v != "text"))
                throw ValidationError("$flags.output", "expected \"json\" or \"text\"");
            out.output = v.get<std::string>();
        } else if (k == "trace") {
            if (!v.is_boolean()) throw ValidationError("$flags.trace", "expected a boolean");
            out.trace = v.get<bool>();
        } else if (k == "ray") {
            out.ray = vec_from_json(v, "$flags.ray");
        } else if (k == "matrix") {
            out.matrix = matrix_from_json(v, "$flags.matrix");
        } else if (k == "cone") {
            if (!v.is_number_integer()) throw ValidationError("$flags.cone", "expected an integer");
            out.cone = v.get<int>();
        } else if (k == "n_max") {
            if (!v.is_number_integer()) throw ValidationError("$flags.n_max", "expected an integer");
            out.n_max = v.get<int>();
        } else if (k == "deg_max") {
            if (!v.is_number_integer()) throw ValidationError("$flags.deg_max", "expected an integer");
            out.deg_max = v.get<int>();
        } else if (k == "opens") {
            if (!v.is_array()) throw ValidationError("$flags.opens", "expected an array");
            out.opens = v;
        } else {
            throw ValidationError("$flags." + k, "unknown flag");
        }
    }
    return out;
}

std::string render_text(const Json& j) {
    std::ostringstream os;
    if (j.is_object()) {
        for (const auto& item : j.items()) os << item.key() << ": " << item.value().dump() << "\n";
    } else {
        os << j.dump() << "\n";
    }
    return os.str();
}

void need_docs(const std::vector<Json>& docs, std::size_t n, const std::string& verb) {
    if (docs.size() != n)
        throw ValidationError("$documents", verb + " expects " + std::to_string(n) + " document(s), got " +
                                                std::to_string(docs.size()));
}

Json rays_json(const Cone& c) {
    Json rays = Json::array();
    for (const Vec& r : c.rays()) rays.push_back(vec_to_json(r));
    return rays;
}

std::vector<ChartOpen> opens_from_json(const Json& arr, const std::vector<Fan>& charts) {
    std::vector<ChartOpen> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const Json& o = arr[k];
        const std::string path = "$flags.opens[" + std::to_string(k) + "]";
        if (!o.is_object()) throw ValidationError(path, "expected an object");
        for (const auto& item : o.items())
            if (item.key() != "chart" && item.key() != "cones")
                throw ValidationError(path + "." + item.key(), "unknown field");
        auto ci = o.find("chart");
        if (ci == o.end() || !ci->is_number_integer())
            throw ValidationError(path + ".chart", "expected a chart index");
        ChartOpen open;
        open.chart = ci->get<int>();
        if (open.chart < 0 || open.chart >= static_cast<int>(charts.size()))
            throw ValidationError(path + ".chart", "chart index out of range");
        auto cj = o.find("cones");
        if (cj == o.end() || !cj->is_array()) throw ValidationError(path + ".cones", "expected an array");
        const int rank = charts[std::size_t(open.chart)].ambient_rank();
        for (std::size_t c = 0; c < cj->size(); ++c) {
            const Json& cone = (*cj)[c];
            const std::string cpath = path + ".cones[" + std::to_string(c) + "]";
            if (!cone.is_array()) throw ValidationError(cpath, "expected an array of rays");
            std::vector<Vec> rays;
            for (std::size_t r = 0; r < cone.size(); ++r)
                rays.push_back(vec_from_json(cone[r], cpath + "[" + std::to_string(r) + "]", rank));
            open.max_cones.push_back(Cone::from_rays(rank, std::move(rays)));
        }
        out.push_back(std::move(open));
    }
    return out;
}

Json dispatch_impl(const std::vector<std::string>& verb, const std::vector<Json>& docs, const Flags& flags,
                   std::string& trace) {
    const std::string name = [&] {
        std::string s;
        for (const std::string& w : verb) s += (s.empty() ? "" : " ") + w;
        return s;
    }();
    auto tline = [&](const std::string& s) {
        if (flags.trace) trace += s + "\n";
    };

    if (verb == std::vector<std::string>{"monoid", "saturate"}) {
        need_docs(docs, 1, name);
        FsMonoid p = monoid_from_doc(docs[0]);
        FsMonoid s = p.saturation();
        tline("saturation: " + std::to_string(p.generators().size()) + " -> " +
              std::to_string(s.generators().size()) + " generators");
        return monoid_to_doc(s);
    }
    if (verb == std::vector<std::string>{"monoid", "hilbert"}) {
        need_docs(docs, 1, name);
        FsMonoid p = monoid_from_doc(docs[0]);
        Json hb = Json::array();
        for (const Vec& v : p.hilbert()) hb.push_back(vec_to_json(v));
        return Json{{"hilbert_basis", hb}};
    }
    if (verb == std::vector<std::string>{"monoid", "sharpen"}) {
        need_docs(docs, 1, name);
        Sharpening sh = sharpen(monoid_from_doc(docs[0]));
        Json out;
        out["sharp"] = monoid_to_doc(sh.sharp);
        out["projection"] = matrix_to_json(sh.projection.matrix);
        out["section"] = matrix_to_json(sh.section);
        return out;
    }
    if (verb == std::vector<std::string>{"monoid", "pushout"}) {
        need_docs(docs, 2, name);
        MonoidHom f = hom_from_doc(docs[0]);
        MonoidHom g = hom_from_doc(docs[1]);
        PushoutResult r = saturated_pushout(f, g);
        Json out;
        out["pushout"] = monoid_to_doc(r.monoid);
        out["insertion1"] = matrix_to_json(r.insertion1.matrix);
        out["insertion2"] = matrix_to_json(r.insertion2.matrix);
        return out;
    }
    if (verb == std::vector<std::string>{"monoid", "exact"}) {
        need_docs(docs, 1, name);
        return Json{{"exact", is_exact(hom_from_doc(docs[0]))}};
    }
    if (verb == std::vector<std::string>{"monoid", "kummer"}) {
        need_docs(docs, 1, name);
        return Json{{"kummer", is_kummer(hom_from_doc(docs[0]))}};
    }
    if (verb == std::vector<std::string>{"monoid", "neat"}) {
        need_docs(docs, 1, name);
        NeatSplitting ns = neat_splitting(hom_from_doc(docs[0]));
        Json out;
        out["retraction"] = matrix_to_json(ns.retraction);
        Json sb = Json::array(), tb = Json::array(), cp = Json::array();
        for (const Vec& v : ns.source_basis) sb.push_back(vec_to_json(v));
        for (const Vec& v : ns.target_basis) tb.push_back(vec_to_json(v));
        for (const Vec& v : ns.complement) cp.push_back(vec_to_json(v));
        out["source_basis"] = std::move(sb);
        out["target_basis"] = std::move(tb);
        out["complement"] = std::move(cp);
        return out;
    }
    if (verb == std::vector<std::string>{"monoid", "self-pushout"}) {
        need_docs(docs, 1, name);
        SelfPushoutReport r = self_pushout_report(hom_from_doc(docs[0]));
        Json out;
        out["pushout"] = monoid_to_doc(r.pushout);
        out["sharp_quotient"] = monoid_to_doc(r.sharp_quotient);
        out["pushout_rank"] = r.pushout_rank;
        out["expected_rank"] = r.expected_rank;
        out["rank_identity_holds"] = r.rank_identity_holds;
        out["pushout_units_trivial"] = r.pushout_units_trivial;
        out["codiagonal_iso"] = r.codiagonal_iso;
        out["f_is_iso"] = r.f_is_iso;
        out["iso_detected"] = r.iso_detected;
        out["consistent"] = r.consistent;
        return out;
    }

    if (verb == std::vector<std::string>{"fan", "validate"}) {
        need_docs(docs, 1, name);
        RawFanData raw = raw_fan_data_from_doc(docs[0]);
        FanValidation v = validate_fan_data(raw.ambient_rank, raw.cones);
        return Json{{"ok", v.ok}, {"message", v.message}};
    }
    if (verb == std::vector<std::string>{"fan", "subdivision-check"}) {
        need_docs(docs, 2, name);
        Fan base = fan_from_doc(docs[0]);
        Fan fine = fan_from_doc(docs[1]);
        return Json{{"is_subdivision", is_subdivision(fine, base)}};
    }
    if (verb == std::vector<std::string>{"fan", "star"}) {
        need_docs(docs, 1, name);
        if (!flags.ray) throw ValidationError("$flags.ray", "star subdivision requires --ray");
        Fan f = fan_from_doc(docs[0]);
        Fan fine = star_subdivision(f, *flags.ray);
        tline("star center " + vec_to_string(*flags.ray) + ": " + std::to_string(f.max_cones().size()) +
              " -> " + std::to_string(fine.max_cones().size()) + " maximal cones");
        return subdivision_to_doc(make_subdivision(std::move(f), std::move(fine)));
    }
    if (verb == std::vector<std::string>{"fan", "refine"}) {
        need_docs(docs, 2, name);
        return fan_to_doc(common_refinement(fan_from_doc(docs[0]), fan_from_doc(docs[1])));
    }
    if (verb == std::vector<std::string>{"fan", "pullback"}) {
        need_docs(docs, 2, name);
        DividedMorphismRep rep = rep_from_doc(docs[0]);
        Subdivision tsub = subdivision_from_doc(docs[1]);
        FanMorphism fm = make_fan_morphism(rep.source_subdivision.fine, rep.target, rep.matrix);
        return subdivision_to_doc(pullback_subdivision(fm, tsub));
    }
    if (verb == std::vector<std::string>{"fan", "cone-monoid"}) {
        need_docs(docs, 1, name);
        Fan f = fan_from_doc(docs[0]);
        if (flags.cone < 0 || flags.cone >= static_cast<int>(f.max_cones().size()))
            throw ValidationError("$flags.cone", "cone index out of range");
        return monoid_to_doc(cone_monoid(f.max_cones()[std::size_t(flags.cone)]));
    }

    if (verb == std::vector<std::string>{"blowup"}) {
        need_docs(docs, 2, name);
        Fan base = fan_from_doc(docs[0]);
        MonoidIdeal ideal = ideal_from_doc(docs[1]);
        if (base.max_cones().size() == 1 && base.ambient_rank() <= kGroupRankCap) {
            FsMonoid cm = cone_monoid(base.max_cones()[0]);
            if (ideal.parent.ambient() != cm.ambient() || !ideal.parent.same_submonoid(cm))
                throw DomainError("SourceMismatch", "ideal monoid is not the chart monoid of the base cone");
        }
        BlowupResult res = log_blowup(base, ideal);
        for (std::size_t i = 0; i < res.subdivision.max_cones().size(); ++i) {
            tline("piece " + std::to_string(i) + " rays " +
                  [&] {
                      std::string s;
                      for (const Vec& r : res.subdivision.max_cones()[i].rays()) s += vec_to_string(r);
                      return s;
                  }() +
                  " <- generator " + vec_to_string(res.minimal_generator[i]));
        }
        Json out;
        out["subdivision"] = subdivision_to_doc(Subdivision{res.base, res.subdivision});
        Json g = Json::array(), m = Json::array();
        for (const Vec& v : res.generators) g.push_back(vec_to_json(v));
        for (const Vec& v : res.minimal_generator) m.push_back(vec_to_json(v));
        out["generators"] = std::move(g);
        out["minimal_generator"] = std::move(m);
        return out;
    }

    if (verb == std::vector<std::string>{"divided", "hom"}) {
        need_docs(docs, 2, name);
        if (!flags.matrix) throw ValidationError("$flags.matrix", "divided hom requires --matrix");
        Fan source = fan_from_doc(docs[0]);
        Fan target = fan_from_doc(docs[1]);
        std::optional<DividedMorphismRep> r = make_rep(source, target, *flags.matrix);
        if (!r) return Json{{"exists", false}};
        tline("certificate has " + std::to_string(r->source_subdivision.fine.max_cones().size()) +
              " maximal cones");
        return rep_to_doc(*r);
    }
    if (verb == std::vector<std::string>{"divided", "eq"}) {
        need_docs(docs, 2, name);
        return Json{{"equal", eq_divided(rep_from_doc(docs[0]), rep_from_doc(docs[1]))}};
    }
    if (verb == std::vector<std::string>{"divided", "compose"}) {
        need_docs(docs, 2, name);
        return rep_to_doc(compose_divided(rep_from_doc(docs[0]), rep_from_doc(docs[1])));
    }
    if (verb == std::vector<std::string>{"divided", "iso"}) {
        need_docs(docs, 1, name);
        return Json{{"iso", is_iso_divided(rep_from_doc(docs[0]))}};
    }
    if (verb == std::vector<std::string>{"divided", "exactify"}) {
        need_docs(docs, 1, name);
        return rep_to_doc(exactify(rep_from_doc(docs[0])));
    }

    if (verb == std::vector<std::string>{"deform", "build"}) {
        need_docs(docs, 2, name);
        DeformationMonoid d = deformation_monoid(monoid_from_doc(docs[0]), ideal_from_doc(docs[1]));
        if (d.degenerate_center) tline("warning: ideal contains a unit; center is empty");
        Json out;
        out["rees"] = monoid_to_doc(d.rees);
        out["rees_raw"] = monoid_to_doc(d.rees_raw);
        out["degenerate_center"] = d.degenerate_center;
        out["t"] = vec_to_json(d.t);
        return out;
    }
    if (verb == std::vector<std::string>{"deform", "generic-fiber"}) {
        need_docs(docs, 2, name);
        DeformationMonoid d = deformation_monoid(monoid_from_doc(docs[0]), ideal_from_doc(docs[1]));
        GenericFiber gf = fiber_generic(d);
        Json out;
        out["fiber"] = monoid_to_doc(gf.monoid);
        out["reference"] = monoid_to_doc(gf.reference);
        out["iso"] = gf.iso;
        return out;
    }
    if (verb == std::vector<std::string>{"deform", "zero-fiber"}) {
        need_docs(docs, 2, name);
        DeformationMonoid d = deformation_monoid(monoid_from_doc(docs[0]), ideal_from_doc(docs[1]));
        std::vector<std::vector<Vec>> slices = fiber_zero_pieces(d, flags.n_max, flags.deg_max);
        Json sj = Json::array();
        for (const std::vector<Vec>& slice : slices) {
            Json sl = Json::array();
            for (const Vec& m : slice) sl.push_back(vec_to_json(m));
            sj.push_back(std::move(sl));
        }
        return Json{{"slices", sj}, {"n_max", flags.n_max}, {"deg_max", flags.deg_max}};
    }
    if (verb == std::vector<std::string>{"deform", "square-check"}) {
        need_docs(docs, 3, name);
        FsMonoid base = monoid_from_doc(docs[0]);
        MonoidIdeal inner = ideal_from_doc(docs[1]);
        MonoidIdeal outer = ideal_from_doc(docs[2]);
        SquareCheckReport rep = deform_square_check(base, inner, outer, flags.n_max, flags.deg_max);
        Json rows = Json::array();
        for (const SquareCheckRow& row : rep.rows) {
            Json w = Json::array();
            for (const Vec& m : row.witnesses) w.push_back(vec_to_json(m));
            rows.push_back(Json{{"n", row.n}, {"equal", row.equal}, {"witnesses", w}});
        }
        return Json{{"rows", rows}, {"all_equal", rep.all_equal}};
    }

    if (verb == std::vector<std::string>{"space", "validate"}) {
        need_docs(docs, 1, name);
        try {
            FanSpaceData data = space_from_doc(docs[0]);
            GluingValidation v = FanSpace::validate(data);
            return Json{{"ok", v.ok}, {"message", v.message}};
        } catch (const DomainError& e) {
            return Json{{"ok", false}, {"message", std::string(e.what())}};
        }
    }
    if (verb == std::vector<std::string>{"space", "glue"}) {
        need_docs(docs, 1, name);
        FanSpace sp(space_from_doc(docs[0]));
        Json orbits = Json::array();
        for (const std::vector<ChartCone>& orbit : sp.orbits()) {
            Json oj = Json::array();
            for (const ChartCone& m : orbit) oj.push_back(Json{{"chart", m.chart}, {"rays", rays_json(m.cone)}});
            orbits.push_back(std::move(oj));
        }
        return Json{{"orbit_count", sp.orbit_count()}, {"orbits", orbits}};
    }
    if (verb == std::vector<std::string>{"space", "cover"} ||
        verb == std::vector<std::string>{"space", "union"}) {
        need_docs(docs, 1, name);
        if (!flags.opens) throw ValidationError("$flags.opens", name + " requires --opens");
        FanSpace sp(space_from_doc(docs[0]));
        std::vector<ChartOpen> opens = opens_from_json(*flags.opens, sp.charts());
        if (verb[1] == "cover") return Json{{"cover", is_cover(sp, opens)}};
        SpaceSubset u = union_opens(sp, opens);
        Json per = Json::array();
        for (const ChartOpen& c : u.per_chart) {
            Json cones = Json::array();
            for (const Cone& cn : c.max_cones) cones.push_back(rays_json(cn));
            per.push_back(Json{{"chart", c.chart}, {"max_cones", cones}});
        }
        Json ids = Json::array();
        for (int k : u.orbit_ids) ids.push_back(k);
        return Json{{"per_chart", per}, {"orbit_ids", ids}};
    }

    throw ValidationError("$command", "unknown verb: " + name);
}

CliResult guarded(const std::function<CliResult()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        Json err;
        err["error"] = Json{{"code", "ParseError"},
                            {"line", e.line()},
                            {"column", e.column()},
                            {"message", std::string(e.what())}};
        return CliResult{2, canonical_dump(err), ""};
    } catch (const ValidationError& e) {
        Json err;
        err["error"] =
            Json{{"code", "ValidationError"}, {"path", e.path()}, {"message", std::string(e.what())}};
        return CliResult{2, canonical_dump(err), ""};
    } catch (const TorsionCokernelError& e) {
        Json inv = Json::array();
        for (const Int& d : e.invariants) inv.push_back(int_to_json(d));
        Json err;
        err["error"] =
            Json{{"code", e.code()}, {"invariants", inv}, {"message", std::string(e.what())}};
        return CliResult{1, canonical_dump(err), ""};
    } catch (const DomainError& e) {
        Json err;
        err["error"] = Json{{"code", e.code()}, {"message", std::string(e.what())}};
        return CliResult{1, canonical_dump(err), ""};
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"code", "InternalError"}, {"message", std::string(e.what())}};
        return CliResult{1, canonical_dump(err), ""};
    }
}

} // namespace

CliResult dispatch(const std::vector<std::string>& verb, const std::vector<Json>& documents,
                   const Json& flags) {
    return guarded([&]() -> CliResult {
        Flags f = parse_flags(flags);
        std::string trace;
        Json out = dispatch_impl(verb, documents, f, trace);
        std::string text = f.output == "text" ? render_text(out) : canonical_dump(out);
        return CliResult{0, std::move(text), std::move(trace)};
    });
}

namespace {

Vec ray_from_string(const std::string& s) {
    if (!s.empty() && s[0] == '[') return vec_from_json(parse_text(s), "$flags.ray");
    Vec out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        try {
            out.push_back(Int(cur));
        } catch (const std::exception&) {
            throw ValidationError("$flags.ray", "not a comma-separated integer list: " + s);
        }
    }
    if (out.empty()) throw ValidationError("$flags.ray", "empty ray");
    return out;
}

IntMatrix matrix_from_string(const std::string& s) {
    if (!s.empty() && s[0] == '[') return matrix_from_json(parse_text(s), "$flags.matrix");
    std::vector<Vec> rows;
    std::string row;
    std::istringstream is(s);
    while (std::getline(is, row, ';')) rows.push_back(ray_from_string(row));
    for (const Vec& r : rows)
        if (r.size() != rows[0].size())
            throw ValidationError("$flags.matrix", "rows of unequal length: " + s);
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    return IntMatrix::from_rows(cols, rows);
}

struct ArgState {
    std::vector<std::string> files;
    std::string output = "json";
    bool trace = false;
    std::string ray_str, matrix_str, opens_str;
    int cone = 0;
    int n_max = 3;
    int deg_max = 6;
    std::vector<std::string> selected;
};

CLI::App* add_leaf(CLI::App* parent, const char* cmd_name, const char* desc, ArgState& st,
                   std::vector<std::string> verb, int min_docs, int max_docs) {
    CLI::App* cmd = parent->add_subcommand(cmd_name, desc);
    cmd->fallthrough();
    CLI::Option* opt = cmd->add_option("files", st.files, "input documents ('-' reads standard input)");
    if (max_docs > 0) opt->expected(min_docs, max_docs);
    cmd->callback([&st, verb = std::move(verb)] { st.selected = verb; });
    return cmd;
}

std::string read_input(const std::string& path, const std::string& stdin_text) {
    if (path == "-") return stdin_text;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path, "cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

CliResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text) {
    ArgState st;
    CLI::App app{"exact calculus for fans, their subdivisions, and the monoids behind log structures"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--output", st.output, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--trace", st.trace, "print derivation steps to standard error");

    CLI::App* monoid = app.add_subcommand("monoid", "fs monoid operations");
    monoid->require_subcommand(1);
    monoid->fallthrough();
    add_leaf(monoid, "saturate", "saturation of a monoid", st, {"monoid", "saturate"}, 1, 1);
    add_leaf(monoid, "hilbert", "minimal generators of the sharp saturation", st, {"monoid", "hilbert"}, 1, 1);
    add_leaf(monoid, "sharpen", "quotient by the unit group", st, {"monoid", "sharpen"}, 1, 1);
    add_leaf(monoid, "pushout", "saturated pushout of two homs with equal source", st, {"monoid", "pushout"},
             2, 2);
    add_leaf(monoid, "exact", "exactness test for a hom", st, {"monoid", "exact"}, 1, 1);
    add_leaf(monoid, "kummer", "Kummer test for a hom", st, {"monoid", "kummer"}, 1, 1);
    add_leaf(monoid, "neat", "split an injective hom off its target group", st, {"monoid", "neat"}, 1, 1);
    add_leaf(monoid, "self-pushout", "self-pushout diagnostic for a sharp hom", st,
             {"monoid", "self-pushout"}, 1, 1);

    CLI::App* fan = app.add_subcommand("fan", "fan and subdivision operations");
    fan->require_subcommand(1);
    fan->fallthrough();
    add_leaf(fan, "validate", "check fan axioms", st, {"fan", "validate"}, 1, 1);
    add_leaf(fan, "subdivision-check", "is the second fan a subdivision of the first", st,
             {"fan", "subdivision-check"}, 2, 2);
    CLI::App* star = add_leaf(fan, "star", "star subdivision at a ray", st, {"fan", "star"}, 1, 1);
    star->add_option("--ray", st.ray_str, "primitive ray, e.g. 1,1");
    add_leaf(fan, "refine", "coarsest common refinement", st, {"fan", "refine"}, 2, 2);
    add_leaf(fan, "pullback", "pull a target subdivision back along a morphism", st, {"fan", "pullback"}, 2,
             2);
    CLI::App* cm = add_leaf(fan, "cone-monoid", "dual monoid of a maximal cone", st, {"fan", "cone-monoid"},
                            1, 1);
    cm->add_option("--cone", st.cone, "index of the maximal cone")->capture_default_str();

    add_leaf(&app, "blowup", "subdivide an affine fan along a monomial ideal", st, {"blowup"}, 2, 2);

    CLI::App* divided = app.add_subcommand("divided", "morphisms up to subdivision");
    divided->require_subcommand(1);
    divided->fallthrough();
    CLI::App* dhom = add_leaf(divided, "hom", "build the canonical representative for a matrix", st,
                              {"divided", "hom"}, 2, 2);
    dhom->add_option("--matrix", st.matrix_str, "integer matrix, rows separated by ';', e.g. 1,0;0,1");
    add_leaf(divided, "eq", "equality in the localized category", st, {"divided", "eq"}, 2, 2);
    add_leaf(divided, "compose", "composition of two representatives", st, {"divided", "compose"}, 2, 2);
    add_leaf(divided, "iso", "isomorphism test", st, {"divided", "iso"}, 1, 1);
    add_leaf(divided, "exactify", "canonical (coarsest) representative", st, {"divided", "exactify"}, 1, 1);

    CLI::App* deform = app.add_subcommand("deform", "deformation to the normal cone");
    deform->require_subcommand(1);
    deform->fallthrough();
    add_leaf(deform, "build", "extended Rees monoid of a center", st, {"deform", "build"}, 2, 2);
    add_leaf(deform, "generic-fiber", "Rees monoid with t inverted", st, {"deform", "generic-fiber"}, 2, 2);
    CLI::App* zf = add_leaf(deform, "zero-fiber", "associated-graded monomial slices", st,
                            {"deform", "zero-fiber"}, 2, 2);
    zf->add_option("--n-max", st.n_max, "largest slice index")->capture_default_str();
    zf->add_option("--deg-max", st.deg_max, "largest monomial degree")->capture_default_str();
    CLI::App* sq = add_leaf(deform, "square-check", "degreewise cartesian-square comparison", st,
                            {"deform", "square-check"}, 3, 3);
    sq->add_option("--n-max", st.n_max, "largest power compared")->capture_default_str();
    sq->add_option("--deg-max", st.deg_max, "largest monomial degree")->capture_default_str();

    CLI::App* space = app.add_subcommand("space", "fans glued along open subfans");
    space->require_subcommand(1);
    space->fallthrough();
    add_leaf(space, "validate", "check the gluing conditions", st, {"space", "validate"}, 1, 1);
    add_leaf(space, "glue", "build the space and list cone orbits", st, {"space", "glue"}, 1, 1);
    CLI::App* cover = add_leaf(space, "cover", "do the opens cover the space", st, {"space", "cover"}, 1, 1);
    cover->add_option("--opens", st.opens_str, "JSON array of {chart, cones}, or @file");
    CLI::App* uni = add_leaf(space, "union", "orbit-saturated union of opens", st, {"space", "union"}, 1, 1);
    uni->add_option("--opens", st.opens_str, "JSON array of {chart, cones}, or @file");

    add_leaf(&app, "run", "execute a request document", st, {"run"}, 1, 1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return CliResult{0, app.help(), ""};
    } catch (const CLI::ParseError& e) {
        Json err;
        err["error"] = Json{{"code", "UsageError"}, {"message", std::string(e.what())}};
        return CliResult{2, canonical_dump(err), ""};
    }

    return guarded([&]() -> CliResult {
        std::vector<Json> docs;
        for (const std::string& f : st.files) docs.push_back(parse_text(read_input(f, stdin_text)));

        Json flags;
        flags["output"] = st.output;
        flags["trace"] = st.trace;
        if (!st.ray_str.empty()) flags["ray"] = vec_to_json(ray_from_string(st.ray_str));
        if (!st.matrix_str.empty()) flags["matrix"] = matrix_to_json(matrix_from_string(st.matrix_str));
        if (!st.opens_str.empty()) {
            std::string text = st.opens_str;
            if (text[0] == '@') text = read_input(text.substr(1), stdin_text);
            Json opens = parse_text(text);
            if (!opens.is_array()) throw ValidationError("$flags.opens", "expected a JSON array");
            flags["opens"] = std::move(opens);
        }
        flags["cone"] = st.cone;
        flags["n_max"] = st.n_max;
        flags["deg_max"] = st.deg_max;

        if (st.selected == std::vector<std::string>{"run"}) {
            const Json& rq = docs.at(0);
            if (!rq.is_object()) throw ValidationError("$", "expected a request object");
            for (const auto& item : rq.items())
                if (item.key() != "kind" && item.key() != "version" && item.key() != "command" &&
                    item.key() != "documents" && item.key() != "flags")
                    throw ValidationError("$." + item.key(), "unknown field");
            if (!rq.contains("kind") || rq["kind"] != "request")
                throw ValidationError("$.kind", "expected kind \"request\"");
            if (!rq.contains("version") || rq["version"] != "1")
                throw ValidationError("$.version", "expected version \"1\"");
            if (!rq.contains("command") || !rq["command"].is_array())
                throw ValidationError("$.command", "expected an array of words");
            std::vector<std::string> verb;
            for (const Json& w : rq["command"]) {
                if (!w.is_string()) throw ValidationError("$.command", "expected an array of words");
                verb.push_back(w.get<std::string>());
            }
            std::vector<Json> inner_docs;
            if (rq.contains("documents")) {
                if (!rq["documents"].is_array())
                    throw ValidationError("$.documents", "expected an array");
                for (const Json& d : rq["documents"]) inner_docs.push_back(d);
            }
            Json inner_flags = flags; // CLI-level settings are the defaults
            if (rq.contains("flags")) {
                if (!rq["flags"].is_object()) throw ValidationError("$.flags", "expected an object");
                for (const auto& item : rq["flags"].items()) inner_flags[item.key()] = item.value();
            }
            return dispatch(verb, inner_docs, inner_flags);
        }

        return dispatch(st.selected, docs, flags);
    });
}

} // namespace logdiv
