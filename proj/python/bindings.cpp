#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infomarket/cli.hpp"
#include "infomarket/io.hpp"

namespace py = pybind11;
using namespace infomarket;

namespace {

// Options arrive as a JSON object keyed like the command line flags.
cli::Options options_from_json(const std::string& command, const Json& j) {
  cli::Options o;
  o.command = command;
  o.design_kind = j.value("kind", std::string());
  if (j.contains("true_state")) o.true_state = j["true_state"].get<std::string>();
  if (j.contains("max_rounds")) o.max_rounds = j["max_rounds"].get<std::size_t>();
  o.events = j.value("events", std::vector<std::string>{});
  o.candidates = j.value("candidates", std::vector<std::string>{});
  o.budget = j.value("budget", o.budget);
  if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
  o.base = j.value("base", o.base);
  return o;
}

py::tuple report_tuple(const cli::RunReport& r) { return py::make_tuple(r.exit_code, r.body.dump()); }

}  // namespace

PYBIND11_MODULE(_infomarket, m) {
  m.doc() = "Exact-arithmetic information market analysis";

  // translators run newest first, so derived types are registered last
  auto base = py::register_exception<Error>(m, "InfomarketError", PyExc_RuntimeError);
  auto instance = py::register_exception<InstanceError>(m, "InstanceError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ScenarioError>(m, "ScenarioError", instance.ptr());

  m.def("normalize_scenario", [](const std::string& text) { return to_json(parse_scenario_text(text)).dump(); },
        py::arg("scenario"), "Validates a scenario document and returns its canonical JSON.");

  m.def(
      "run",
      [](const std::string& command, const std::string& scenario, const std::string& options) {
        auto o = options_from_json(command, Json::parse(options));
        auto doc = Json::parse(scenario);
        if (command == "reduce-setcover") return report_tuple(cli::run(o, set_cover_from_json(doc)));
        return report_tuple(cli::run(o, scenario_from_json(doc)));
      },
      py::arg("command"), py::arg("scenario"), py::arg("options") = "{}",
      "Runs a command and returns (exit_code, report_json).");

  m.def(
      "reverify",
      [](const std::string& report, const std::string& scenario) {
        return reverify_report(Json::parse(report), parse_scenario_text(scenario));
      },
      py::arg("report"), py::arg("scenario"), "Re-checks every witness and counterexample in a report.");
}
