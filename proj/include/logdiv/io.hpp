#pragma once

#include "logdiv/blowup.hpp"
#include "logdiv/deform.hpp"
#include "logdiv/divided.hpp"
#include "logdiv/fan.hpp"
#include "logdiv/fanspace.hpp"
#include "logdiv/monoid.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace logdiv {

using Json = nlohmann::json;

/// Parses interchange text. Malformed text raises ParseError with line and
/// column; the result is raw JSON, schema checks happen in the from_doc
/// converters.
Json parse_text(const std::string& text);

/// Canonical serialization: sorted keys, two-space indent, trailing newline,
/// integers beyond 64 bits as decimal strings.
std::string canonical_dump(const Json& j);

/// Exact integers in documents: JSON integers within 64 bits, or decimal
/// strings for anything larger.
Int int_from_json(const Json& v, const std::string& path);
Json int_to_json(const Int& v);
Vec vec_from_json(const Json& v, const std::string& path, int expected_len = -1);
Json vec_to_json(const Vec& v);
IntMatrix matrix_from_json(const Json& v, const std::string& path);
Json matrix_to_json(const IntMatrix& m);

/// Document converters. The from_doc direction performs strict schema
/// validation (kind, version "1", no unknown fields) raising
/// ValidationError, then builds the domain value; domain-level defects
/// (e.g. non-extreme rays, invalid homomorphisms) surface as DomainError.
FsMonoid monoid_from_doc(const Json& doc, const std::string& path = "$");
Json monoid_to_doc(const FsMonoid& m);
MonoidHom hom_from_doc(const Json& doc, const std::string& path = "$");
Json hom_to_doc(const MonoidHom& h);
Fan fan_from_doc(const Json& doc, const std::string& path = "$");
Json fan_to_doc(const Fan& f);
Subdivision subdivision_from_doc(const Json& doc, const std::string& path = "$");
Json subdivision_to_doc(const Subdivision& s);
MonoidIdeal ideal_from_doc(const Json& doc, const std::string& path = "$");
Json ideal_to_doc(const MonoidIdeal& i);
DividedMorphismRep rep_from_doc(const Json& doc, const std::string& path = "$");
Json rep_to_doc(const DividedMorphismRep& r);
FanSpaceData space_from_doc(const Json& doc, const std::string& path = "$");
Json space_to_doc(const FanSpaceData& d);

/// Shape-validated fan data (schema + nonzero rays) without the fan-axiom
/// checks; the validation verbs report axiom defects as verdicts instead of
/// errors.
struct RawFanData {
    int ambient_rank = 0;
    std::vector<std::vector<Vec>> cones;
};

RawFanData raw_fan_data_from_doc(const Json& doc, const std::string& path = "$");

struct CliResult {
    int exit_code = 0;
    std::string out;   // result document or report, newline-terminated
    std::string trace; // --trace diagnostics, meant for stderr
};

/// Executes one verb over already-parsed documents. `verb` is the command
/// path (e.g. {"monoid","saturate"}); `flags` carries verb parameters
/// (n_max, deg_max, ray, matrix, cone, opens, output, trace). Shared by the
/// CLI binary, the request runner, and the tests.
CliResult dispatch(const std::vector<std::string>& verb, const std::vector<Json>& documents,
                   const Json& flags);

/// Full command line (argv minus the program name). File arguments are read
/// from disk; the path "-" denotes `stdin_text`. Never throws: all errors
/// are rendered into the result with the documented exit codes.
CliResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = std::string());

} // namespace logdiv
