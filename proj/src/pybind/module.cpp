#include "logdiv/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;

namespace {

std::tuple<int, std::string, std::string> dispatch_json(const std::vector<std::string>& command,
                                                        const std::string& documents_json,
                                                        const std::string& flags_json) {
    logdiv::Json docs_arr = logdiv::parse_text(documents_json);
    if (!docs_arr.is_array()) throw logdiv::ValidationError("$documents", "expected a JSON array");
    std::vector<logdiv::Json> docs(docs_arr.begin(), docs_arr.end());
    logdiv::Json flags = logdiv::parse_text(flags_json);
    logdiv::CliResult r = logdiv::dispatch(command, docs, flags);
    return {r.exit_code, r.out, r.trace};
}

std::tuple<int, std::string, std::string> run_cli_py(const std::vector<std::string>& args,
                                                     const std::string& stdin_text) {
    logdiv::CliResult r = logdiv::run_cli(args, stdin_text);
    return {r.exit_code, r.out, r.trace};
}

std::string canonical_json(const std::string& text) {
    return logdiv::canonical_dump(logdiv::parse_text(text));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact calculus for fans, subdivisions, and the monoids behind log structures";
    m.def("_dispatch", &dispatch_json, py::arg("command"), py::arg("documents_json"),
          py::arg("flags_json"),
          "Run one verb. Documents ride as a JSON array string; returns (exit_code, out, trace).");
    m.def("_run_cli", &run_cli_py, py::arg("args"), py::arg("stdin_text") = std::string(),
          "Full command-line entry point; returns (exit_code, out, trace).");
    m.def("_canonical_json", &canonical_json, py::arg("text"),
          "Reserialize a JSON text in the canonical byte-stable form.");
}
