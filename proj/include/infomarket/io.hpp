#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "infomarket/certify.hpp"
#include "infomarket/design.hpp"
#include "infomarket/dynamics.hpp"
#include "infomarket/scenario.hpp"
#include "infomarket/scoring.hpp"

namespace infomarket {

using Json = nlohmann::ordered_json;

enum class ScenarioErrorKind {
  malformed,           // not JSON, wrong shape or type
  unknown_state,       // a reference to an undeclared state label
  not_a_partition,     // overlapping, empty or non-covering cells
  prior_sum,           // prior masses do not sum to 1 (or are negative)
  malformed_rational,  // a rational string that does not parse
  duplicate_name,      // repeated state, trader, security or event name
};

std::string to_string(ScenarioErrorKind kind);

// Diagnostic raised while reading a scenario; `location` is a JSON pointer
// into the offending document.
class ScenarioError : public InstanceError {
 public:
  ScenarioError(ScenarioErrorKind kind, std::string location, const std::string& message);

  ScenarioErrorKind kind() const { return kind_; }
  const std::string& location() const { return location_; }

 private:
  ScenarioErrorKind kind_;
  std::string location_;
};

Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(std::string_view text);
Scenario scenario_from_json(const Json& doc);
Json to_json(const Scenario& scenario);

SetCoverInstance parse_set_cover(const std::filesystem::path& path);
SetCoverInstance set_cover_from_json(const Json& doc);
Json to_json(const SetCoverInstance& sc);

// Scenario view of a design instance: uniform prior, traders t1.., the
// candidates as securities and events e1...
Scenario scenario_from_design(const DesignInstance& instance);

// Report fragments. Rationals are "p/q" strings, distributions map state
// labels to their non-zero masses.
Json vector_json(const Vec& v);
Vec vector_from_json(const Json& j);
Json distribution_json(const Distribution& d, const StateSpace& states);
Distribution distribution_from_json(const Json& j, const StateSpace& states);
Json event_json(const Event& e, const StateSpace& states);
Json partition_json(const Partition& p, const StateSpace& states);
Json witness_json(const Witness& w, const StateSpace& states);
Witness witness_from_json(const Json& j, const StateSpace& states);
Json trace_json(const Trace& trace, const Scenario& scenario);
Json ledger_json(const PaymentLedger& ledger, const Scenario& scenario);
Json distinction_json(const DistinguishabilityReport& report, const std::vector<std::string>& event_names,
                      const Scenario& scenario);
Json certificate_json(const Certificate& cert, const Scenario& scenario);
Json separability_json(const SeparabilityVerdict& verdict, const Scenario& scenario);

// Re-checks every witness and distinguishability counterexample embedded in
// a machine-readable report against the scenario it was produced from.
bool reverify_report(const Json& report, const Scenario& scenario);

}  // namespace infomarket
