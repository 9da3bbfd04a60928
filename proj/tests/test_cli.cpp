#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <sys/wait.h>

using namespace logdiv;
using namespace logdiv::testsupport;

namespace {

std::string fixture(const std::string& name) {
    return std::string(LOGDIV_TEST_DIR) + "/fixtures/" + name;
}

std::string golden(const std::string& name) {
    return std::string(LOGDIV_TEST_DIR) + "/goldens/" + name;
}

Json out_json(const CliResult& r) { return parse_text(r.out); }

/// Parse-and-reserialize through the typed layer, dispatching on "kind".
std::string reserialize(const Json& doc) {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "monoid") return canonical_dump(monoid_to_doc(monoid_from_doc(doc)));
    if (kind == "hom") return canonical_dump(hom_to_doc(hom_from_doc(doc)));
    if (kind == "fan") return canonical_dump(fan_to_doc(fan_from_doc(doc)));
    if (kind == "subdivision") return canonical_dump(subdivision_to_doc(subdivision_from_doc(doc)));
    if (kind == "ideal") return canonical_dump(ideal_to_doc(ideal_from_doc(doc)));
    if (kind == "rep") return canonical_dump(rep_to_doc(rep_from_doc(doc)));
    if (kind == "space") return canonical_dump(space_to_doc(space_from_doc(doc)));
    throw std::logic_error("unknown kind " + kind);
}

struct ProcessResult {
    int exit_code = -1;
    std::string out;
};

ProcessResult run_binary(const std::string& cmdline) {
    ProcessResult res;
    FILE* p = popen((std::string(LOGDIV_BIN_PATH) + " " + cmdline + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, n);
    int status = pclose(p);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

} // namespace

TEST_CASE("documents round-trip byte-stably through the typed layer") {
    SUBCASE("on-disk fixture corpus") {
        for (const std::string name :
             {"a2_fan.json", "corner_ideal.json", "monoid_23.json", "p1_space.json", "hom_diag.json",
              "nat_monoid.json", "ideal_1.json", "ideal_2.json"}) {
            CAPTURE(name);
            Json doc = parse_text(read_file(fixture(name)));
            std::string once = reserialize(doc);
            std::string twice = reserialize(parse_text(once));
            CHECK(once == twice);
        }
    }
    SUBCASE("generated subdivision and rep documents") {
        Json sub = subdivision_to_doc(make_subdivision(a2_fan(), star11()));
        CHECK(canonical_dump(sub) == reserialize(sub));
        auto r = make_rep(a2_fan(), star11(), IntMatrix::identity(2));
        REQUIRE(r.has_value());
        Json rep = rep_to_doc(*r);
        CHECK(canonical_dump(rep) == reserialize(rep));
    }
    SUBCASE("torsion coordinates survive") {
        Json doc = parse_text(R"({"kind":"monoid","version":"1","free_rank":1,"torsion":[2],
                                  "generators":[[1,0],[0,1]]})");
        std::string once = reserialize(doc);
        CHECK(once == reserialize(parse_text(once)));
    }
}

TEST_CASE("saturate through the command line") {
    CliResult r = run_cli({"monoid", "saturate", fixture("monoid_23.json")}, "");
    REQUIRE(r.exit_code == 0);
    Json doc = out_json(r);
    CHECK(doc["kind"] == "monoid");
    CHECK(monoid_from_doc(doc).contains(vl({1})));
    SUBCASE("identical bytes on a second run") {
        CliResult again = run_cli({"monoid", "saturate", fixture("monoid_23.json")}, "");
        CHECK(again.exit_code == 0);
        CHECK(again.out == r.out);
    }
    SUBCASE("golden bytes") {
        CHECK(r.out == read_file(golden("saturate_23.json")));
    }
}

TEST_CASE("blow-up through the command line") {
    CliResult r = run_cli({"blowup", fixture("a2_fan.json"), fixture("corner_ideal.json")}, "");
    REQUIRE(r.exit_code == 0);
    Json doc = out_json(r);
    Subdivision sub = subdivision_from_doc(doc["subdivision"]);
    CHECK(sub.fine == star11());
    CHECK(r.out == read_file(golden("blowup_corner.json")));
    SUBCASE("trace lines go to the side channel") {
        CliResult t = run_cli({"blowup", fixture("a2_fan.json"), fixture("corner_ideal.json"), "--trace"}, "");
        CHECK(t.exit_code == 0);
        CHECK(t.out == r.out);
        CHECK(t.trace.find("generator") != std::string::npos);
    }
}

TEST_CASE("space gluing through the command line") {
    CliResult r = run_cli({"space", "glue", fixture("p1_space.json")}, "");
    REQUIRE(r.exit_code == 0);
    Json doc = out_json(r);
    CHECK(doc["orbit_count"] == 3);
    CHECK(r.out == read_file(golden("glue_p1.json")));
}

TEST_CASE("square check through the command line") {
    CliResult r = run_cli({"deform", "square-check", fixture("nat_monoid.json"), fixture("ideal_2.json"),
                           fixture("ideal_1.json"), "--n-max", "3", "--deg-max", "8"},
                          "");
    REQUIRE(r.exit_code == 0);
    Json doc = out_json(r);
    CHECK(doc["all_equal"] == false);
    CHECK(doc["rows"][1]["n"] == 2);
    CHECK(doc["rows"][1]["witnesses"] == Json::parse("[[2]]"));
    CHECK(r.out == read_file(golden("square_check_witness.json")));
}

TEST_CASE("flag parsing variants") {
    SUBCASE("star with a comma ray") {
        CliResult r = run_cli({"fan", "star", fixture("a2_fan.json"), "--ray", "1,1"}, "");
        REQUIRE(r.exit_code == 0);
        CHECK(subdivision_from_doc(out_json(r)).fine == star11());
    }
    SUBCASE("matrix in both spellings") {
        CliResult a = run_cli(
            {"divided", "hom", fixture("a2_fan.json"), fixture("a2_fan.json"), "--matrix", "1,0;0,1"}, "");
        CliResult b = run_cli({"divided", "hom", fixture("a2_fan.json"), fixture("a2_fan.json"), "--matrix",
                               "[[1,0],[0,1]]"},
                              "");
        REQUIRE(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(out_json(a)["kind"] == "rep");
    }
    SUBCASE("missing required flag") {
        CliResult r = run_cli({"fan", "star", fixture("a2_fan.json")}, "");
        CHECK(r.exit_code == 2);
        CHECK(out_json(r)["error"]["code"] == "ValidationError");
    }
    SUBCASE("text output") {
        CliResult r = run_cli({"monoid", "hilbert", fixture("monoid_23.json"), "--output", "text"}, "");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out == "hilbert_basis: [[1]]\n");
    }
}

TEST_CASE("stdin and request execution") {
    const std::string monoid_text = read_file(fixture("monoid_23.json"));
    SUBCASE("dash reads standard input") {
        CliResult r = run_cli({"monoid", "hilbert", "-"}, monoid_text);
        REQUIRE(r.exit_code == 0);
        CHECK(out_json(r)["hilbert_basis"] == Json::parse("[[1]]"));
    }
    SUBCASE("request documents bundle command, documents, and flags") {
        Json rq;
        rq["kind"] = "request";
        rq["version"] = "1";
        rq["command"] = Json::array({"monoid", "saturate"});
        rq["documents"] = Json::array({parse_text(monoid_text)});
        rq["flags"] = Json::object();
        CliResult via = run_cli({"run", "-"}, canonical_dump(rq));
        CliResult direct = run_cli({"monoid", "saturate", fixture("monoid_23.json")}, "");
        REQUIRE(via.exit_code == 0);
        CHECK(via.out == direct.out);
    }
    SUBCASE("request flags override the command line") {
        Json rq;
        rq["kind"] = "request";
        rq["version"] = "1";
        rq["command"] = Json::array({"monoid", "hilbert"});
        rq["documents"] = Json::array({parse_text(monoid_text)});
        rq["flags"] = Json{{"output", "text"}};
        CliResult r = run_cli({"run", "-"}, canonical_dump(rq));
        REQUIRE(r.exit_code == 0);
        CHECK(r.out == "hilbert_basis: [[1]]\n");
    }
}

TEST_CASE("error reporting is structured") {
    SUBCASE("syntax errors carry line and column") {
        CliResult r = run_cli({"monoid", "saturate", "-"}, "{\n  \"kind\": oops\n}");
        CHECK(r.exit_code == 2);
        Json err = out_json(r)["error"];
        CHECK(err["code"] == "ParseError");
        CHECK(err["line"] == 2);
        CHECK(err["column"].get<int>() >= 1);
    }
    SUBCASE("schema errors carry a path") {
        CliResult r = run_cli({"monoid", "saturate", "-"},
                              R"({"kind":"monoid","version":"1","free_rank":1,"generators":[[1]],"extra":0})");
        CHECK(r.exit_code == 2);
        Json err = out_json(r)["error"];
        CHECK(err["code"] == "ValidationError");
        CHECK(err["path"].get<std::string>().find("extra") != std::string::npos);
    }
    SUBCASE("domain errors carry the error code") {
        Json fan = parse_text(read_file(fixture("a2_fan.json")));
        Json ideal = parse_text(read_file(fixture("ideal_2.json")));
        CliResult r = dispatch({"blowup"}, {fan, ideal}, Json::object());
        CHECK(r.exit_code == 1);
        CHECK(out_json(r)["error"]["code"] == "SourceMismatch");
    }
    SUBCASE("torsion cokernels report their invariants") {
        Json hom = parse_text(
            R"({"kind":"hom","version":"1",
                "source":{"kind":"monoid","version":"1","free_rank":1,"generators":[[1]]},
                "target":{"kind":"monoid","version":"1","free_rank":1,"generators":[[1]]},
                "matrix":[[2]]})");
        CliResult r = dispatch({"monoid", "neat"}, {hom}, Json::object());
        CHECK(r.exit_code == 1);
        Json err = out_json(r)["error"];
        CHECK(err["code"] == "TorsionCokernel");
        CHECK(err["invariants"] == Json::parse("[2]"));
    }
    SUBCASE("usage problems") {
        CHECK(run_cli({"bogus-verb"}, "").exit_code == 2);
        CHECK(run_cli({}, "").exit_code == 2);
        CHECK(run_cli({"monoid", "saturate", "/nonexistent/file.json"}, "").exit_code == 2);
        CliResult help = run_cli({"--help"}, "");
        CHECK(help.exit_code == 0);
        CHECK(help.out.find("monoid") != std::string::npos);
    }
}

TEST_CASE("the installed binary behaves like the library entry point") {
    SUBCASE("help exits zero") {
        CHECK(run_binary("--help").exit_code == 0);
    }
    SUBCASE("golden bytes through a real process") {
        ProcessResult r = run_binary("blowup " + fixture("a2_fan.json") + " " + fixture("corner_ideal.json"));
        CHECK(r.exit_code == 0);
        CHECK(r.out == read_file(golden("blowup_corner.json")));
    }
    SUBCASE("parse failures exit two") {
        ProcessResult r = run_binary("fan validate " + fixture("ideal_2.json"));
        CHECK(r.exit_code == 2);  // an ideal document is not a fan document
    }
}
