#include "infomarket/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace infomarket {

std::string to_string(ScenarioErrorKind kind) {
  switch (kind) {
    case ScenarioErrorKind::malformed:
      return "malformed";
    case ScenarioErrorKind::unknown_state:
      return "unknown-state";
    case ScenarioErrorKind::not_a_partition:
      return "not-a-partition";
    case ScenarioErrorKind::prior_sum:
      return "prior-sum";
    case ScenarioErrorKind::malformed_rational:
      return "malformed-rational";
    case ScenarioErrorKind::duplicate_name:
      return "duplicate-name";
  }
  return "unknown";
}

ScenarioError::ScenarioError(ScenarioErrorKind kind, std::string location, const std::string& message)
    : InstanceError(to_string(kind) + " at " + (location.empty() ? "/" : location) + ": " + message),
      kind_(kind),
      location_(std::move(location)) {}

namespace {

[[noreturn]] void fail(ScenarioErrorKind kind, const std::string& where, const std::string& message) {
  throw ScenarioError(kind, where, message);
}

std::string child(const std::string& where, std::string_view key) {
  return where + "/" + std::string(key);
}

std::string child(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const Json& require(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) fail(ScenarioErrorKind::malformed, where, std::string("missing '") + key + "'");
  return doc.at(key);
}

const Json& require_array(const Json& doc, const char* key, const std::string& where) {
  const auto& v = require(doc, key, where);
  if (!v.is_array()) fail(ScenarioErrorKind::malformed, child(where, key), "expected an array");
  return v;
}

std::string require_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(ScenarioErrorKind::malformed, where, "expected a string");
  return v.get<std::string>();
}

Rational read_rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(mpz_class(v.dump(), 10));
  if (!v.is_string()) fail(ScenarioErrorKind::malformed_rational, where, "expected a rational string such as \"1/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(ScenarioErrorKind::malformed_rational, where, e.what());
  }
}

StateId read_state(const Json& v, const StateSpace& states, const std::string& where) {
  auto label = require_string(v, where);
  auto s = states.find(label);
  if (!s) fail(ScenarioErrorKind::unknown_state, where, "unknown state '" + label + "'");
  return *s;
}

std::vector<StateId> read_states(const Json& v, const StateSpace& states, const std::string& where) {
  if (!v.is_array()) fail(ScenarioErrorKind::malformed, where, "expected an array of state labels");
  std::vector<StateId> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_state(v[i], states, child(where, i)));
  return out;
}

// label -> rational map; missing labels are zero.
Vec read_state_map(const Json& v, const StateSpace& states, const std::string& where) {
  if (!v.is_object()) fail(ScenarioErrorKind::malformed, where, "expected an object keyed by state label");
  Vec out(states.size(), Rational(0));
  for (const auto& [label, value] : v.items()) {
    auto s = states.find(label);
    if (!s) fail(ScenarioErrorKind::unknown_state, child(where, label), "unknown state '" + label + "'");
    out[*s] = read_rational(value, child(where, label));
  }
  return out;
}

void check_unique(std::set<std::string>& seen, const std::string& name, const std::string& where) {
  if (!seen.insert(name).second) fail(ScenarioErrorKind::duplicate_name, where, "duplicate name '" + name + "'");
}

}  // namespace

Scenario scenario_from_json(const Json& doc) {
  const std::string root;
  if (!doc.is_object()) fail(ScenarioErrorKind::malformed, root, "scenario must be a JSON object");

  const auto& state_list = require_array(doc, "states", root);
  std::vector<std::string> labels;
  std::set<std::string> seen_states;
  for (std::size_t i = 0; i < state_list.size(); ++i) {
    auto label = require_string(state_list[i], child("/states", i));
    check_unique(seen_states, label, child("/states", i));
    labels.push_back(std::move(label));
  }
  if (labels.empty()) fail(ScenarioErrorKind::malformed, "/states", "state list is empty");
  StateSpace states(std::move(labels));
  const auto n = states.size();

  std::optional<Distribution> prior;
  if (doc.contains("prior")) {
    const auto& prior_json = doc.at("prior");
    auto mass = read_state_map(prior_json, states, "/prior");
    for (const auto& label : states.labels()) {
      if (!prior_json.contains(label)) {
        fail(ScenarioErrorKind::prior_sum, "/prior",
             "prior lists " + std::to_string(prior_json.size()) + " of " + std::to_string(n) +
                 " states; missing '" + label + "' (give it \"0\" explicitly)");
      }
    }
    try {
      prior = Distribution(std::move(mass));
    } catch (const InstanceError& e) {
      fail(ScenarioErrorKind::prior_sum, "/prior", e.what());
    }
  } else {
    prior = Distribution::uniform(n);
  }

  const auto& trader_list = require_array(doc, "traders", root);
  if (trader_list.empty()) fail(ScenarioErrorKind::malformed, "/traders", "at least one trader is required");
  std::vector<std::string> trader_names;
  std::vector<Partition> partitions;
  std::set<std::string> seen_traders;
  for (std::size_t i = 0; i < trader_list.size(); ++i) {
    const auto where = child("/traders", i);
    const auto& t = trader_list[i];
    auto name = require_string(require(t, "name", where), child(where, "name"));
    check_unique(seen_traders, name, child(where, "name"));
    const auto& cells_json = require_array(t, "partition", where);
    std::vector<std::vector<StateId>> cells;
    for (std::size_t c = 0; c < cells_json.size(); ++c) {
      cells.push_back(read_states(cells_json[c], states, child(child(where, "partition"), c)));
    }
    try {
      partitions.emplace_back(n, std::move(cells));
    } catch (const InstanceError& e) {
      fail(ScenarioErrorKind::not_a_partition, child(where, "partition"), e.what());
    }
    trader_names.push_back(std::move(name));
  }

  const auto& security_list = require_array(doc, "securities", root);
  if (security_list.empty()) fail(ScenarioErrorKind::malformed, "/securities", "at least one security is required");
  std::vector<std::string> names;
  std::vector<Vec> columns;
  std::set<std::string> seen_securities;
  for (std::size_t j = 0; j < security_list.size(); ++j) {
    const auto where = child("/securities", j);
    const auto& sec = security_list[j];
    auto name = require_string(require(sec, "name", where), child(where, "name"));
    check_unique(seen_securities, name, child(where, "name"));
    if (sec.contains("payoffs")) {
      columns.push_back(read_state_map(sec.at("payoffs"), states, child(where, "payoffs")));
    } else if (sec.contains("event")) {
      Vec column(n, Rational(0));
      for (StateId s : read_states(sec.at("event"), states, child(where, "event"))) column[s] = 1;
      columns.push_back(std::move(column));
    } else {
      fail(ScenarioErrorKind::malformed, where, "security needs 'payoffs' or 'event'");
    }
    names.push_back(std::move(name));
  }

  std::vector<NamedEvent> events;
  std::set<std::string> seen_events;
  if (doc.contains("events")) {
    const auto& event_list = doc.at("events");
    if (!event_list.is_array()) fail(ScenarioErrorKind::malformed, "/events", "expected an array");
    for (std::size_t k = 0; k < event_list.size(); ++k) {
      const auto where = child("/events", k);
      auto name = require_string(require(event_list[k], "name", where), child(where, "name"));
      check_unique(seen_events, name, child(where, "name"));
      auto members = read_states(require(event_list[k], "states", where), states, child(where, "states"));
      events.push_back({std::move(name), Event(n, members)});
    }
  }

  Rational b = 1;
  if (doc.contains("scoring")) {
    const auto& scoring = doc.at("scoring");
    if (!scoring.is_object()) fail(ScenarioErrorKind::malformed, "/scoring", "expected an object");
    if (scoring.contains("b")) b = read_rational(scoring.at("b"), "/scoring/b");
    if (sgn(b) <= 0) fail(ScenarioErrorKind::malformed, "/scoring/b", "b must be positive");
  }

  return Scenario{std::move(states),
                  *std::move(prior),
                  std::move(trader_names),
                  SignalStructure(std::move(partitions)),
                  SecuritySet::from_columns(std::move(names), columns, n),
                  std::move(events),
                  BrierRule(b)};
}

Scenario parse_scenario_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ScenarioErrorKind::malformed, "", e.what());
  }
  return scenario_from_json(doc);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(ScenarioErrorKind::malformed, "", "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Scenario parse_scenario(const std::filesystem::path& path) { return parse_scenario_text(read_file(path)); }

Json vector_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

Vec vector_from_json(const Json& j) {
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_rational(j[i], child("", i)));
  return out;
}

Json distribution_json(const Distribution& d, const StateSpace& states) {
  Json out = Json::object();
  for (StateId s = 0; s < d.size(); ++s) {
    if (sgn(d[s]) != 0) out[states.label(s)] = to_string(d[s]);
  }
  return out;
}

Distribution distribution_from_json(const Json& j, const StateSpace& states) {
  return Distribution(read_state_map(j, states, ""));
}

Json event_json(const Event& e, const StateSpace& states) {
  Json out = Json::array();
  for (StateId s : e.members()) out.push_back(states.label(s));
  return out;
}

Json partition_json(const Partition& p, const StateSpace& states) {
  Json out = Json::array();
  for (const auto& cell : p.cells()) {
    Json c = Json::array();
    for (StateId s : cell) c.push_back(states.label(s));
    out.push_back(std::move(c));
  }
  return out;
}

Json to_json(const Scenario& scenario) {
  const auto& states = scenario.states;
  Json doc;
  doc["states"] = states.labels();
  Json prior = Json::object();
  for (StateId s = 0; s < states.size(); ++s) prior[states.label(s)] = to_string(scenario.prior[s]);
  doc["prior"] = std::move(prior);
  Json traders = Json::array();
  for (std::size_t i = 0; i < scenario.signals.trader_count(); ++i) {
    traders.push_back({{"name", scenario.trader_names.at(i)},
                       {"partition", partition_json(scenario.signals.partition(i), states)}});
  }
  doc["traders"] = std::move(traders);
  Json securities = Json::array();
  for (std::size_t j = 0; j < scenario.securities.security_count(); ++j) {
    Json payoffs = Json::object();
    for (StateId s = 0; s < states.size(); ++s) payoffs[states.label(s)] = to_string(scenario.securities.at(s, j));
    securities.push_back({{"name", scenario.securities.name(j)}, {"payoffs", std::move(payoffs)}});
  }
  doc["securities"] = std::move(securities);
  Json events = Json::array();
  for (const auto& e : scenario.events) events.push_back({{"name", e.name}, {"states", event_json(e.event, states)}});
  doc["events"] = std::move(events);
  doc["scoring"] = {{"b", to_string(scenario.scoring.b())}};
  return doc;
}

SetCoverInstance set_cover_from_json(const Json& doc) {
  const std::string root;
  const auto& universe = require_array(doc, "universe", root);
  SetCoverInstance sc;
  for (std::size_t i = 0; i < universe.size(); ++i) sc.universe.push_back(require_string(universe[i], child("/universe", i)));
  const auto& sets = require_array(doc, "sets", root);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto where = child("/sets", k);
    auto name = require_string(require(sets[k], "name", where), child(where, "name"));
    const auto& members = require_array(sets[k], "elements", where);
    std::vector<std::string> elements;
    for (std::size_t i = 0; i < members.size(); ++i) {
      elements.push_back(require_string(members[i], child(child(where, "elements"), i)));
    }
    sc.sets.emplace_back(std::move(name), std::move(elements));
  }
  return sc;
}

SetCoverInstance parse_set_cover(const std::filesystem::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    fail(ScenarioErrorKind::malformed, "", e.what());
  }
  return set_cover_from_json(doc);
}

Json to_json(const SetCoverInstance& sc) {
  Json sets = Json::array();
  for (const auto& [name, elements] : sc.sets) sets.push_back({{"name", name}, {"elements", elements}});
  return {{"universe", sc.universe}, {"sets", std::move(sets)}};
}

Scenario scenario_from_design(const DesignInstance& instance) {
  std::vector<std::string> traders;
  for (std::size_t i = 0; i < instance.signals.trader_count(); ++i) traders.push_back("t" + std::to_string(i + 1));
  std::vector<NamedEvent> events;
  for (std::size_t k = 0; k < instance.events.size(); ++k) {
    events.push_back({"e" + std::to_string(k + 1), instance.events[k]});
  }
  return Scenario{instance.states,     Distribution::uniform(instance.states.size()),
                  std::move(traders),  instance.signals,
                  instance.candidates, std::move(events),
                  BrierRule(1)};
}

Json witness_json(const Witness& w, const StateSpace& states) {
  return {{"distribution", distribution_json(w.distribution, states)}, {"consensus", vector_json(w.consensus)}};
}

Witness witness_from_json(const Json& j, const StateSpace& states) {
  return Witness{distribution_from_json(j.at("distribution"), states), vector_from_json(j.at("consensus"))};
}

Json trace_json(const Trace& trace, const Scenario& scenario) {
  const auto& states = scenario.states;
  Json steps = Json::array();
  for (const auto& a : trace.announcements) {
    steps.push_back({{"round", a.round},
                     {"trader", scenario.trader_names.at(a.trader)},
                     {"prediction", vector_json(a.prediction)},
                     {"public_set", event_json(a.public_set, states)}});
  }
  return {{"true_state", states.label(trace.true_state)},
          {"initial_prediction", vector_json(trace.initial_prediction)},
          {"initial_public_set", event_json(trace.initial_public_set, states)},
          {"announcements", std::move(steps)},
          {"rounds", trace.rounds},
          {"termination", trace.termination == Termination::fixed_point ? "fixed-point" : "round-cap"},
          {"final_prediction", vector_json(trace.final_prediction())}};
}

Json ledger_json(const PaymentLedger& ledger, const Scenario& scenario) {
  Json net = Json::object();
  for (std::size_t i = 0; i < ledger.trader_net.size(); ++i) {
    net[scenario.trader_names.at(i)] = to_string(ledger.trader_net[i]);
  }
  return {{"scores", vector_json(ledger.scores)},
          {"step_payments", vector_json(ledger.step_payments)},
          {"trader_net", std::move(net)},
          {"total", to_string(ledger.total())}};
}

Json distinction_json(const DistinguishabilityReport& report, const std::vector<std::string>& event_names,
                      const Scenario& scenario) {
  Json out = Json::array();
  for (std::size_t k = 0; k < report.events.size(); ++k) {
    const auto& e = report.events[k];
    Json item{{"event", event_names.at(k)}, {"distinguished", e.distinguished}};
    if (e.counterexample) {
      const auto& ce = *e.counterexample;
      item["counterexample"] = {{"first", distribution_json(ce.first, scenario.states)},
                                {"second", distribution_json(ce.second, scenario.states)},
                                {"first_probability", to_string(ce.first_probability)},
                                {"second_probability", to_string(ce.second_probability)}};
    }
    out.push_back(std::move(item));
  }
  return out;
}

Json certificate_json(const Certificate& cert, const Scenario& scenario) {
  Json out{{"reason", to_string(cert.reason)}};
  if (cert.trader) out["trader"] = scenario.trader_names.at(*cert.trader);
  if (!cert.signal_values.empty()) {
    Json per_security = Json::array();
    for (const auto& per_trader : cert.signal_values) {
      Json t = Json::array();
      for (const auto& values : per_trader) t.push_back(vector_json(values));
      per_security.push_back(std::move(t));
    }
    out["signal_values"] = std::move(per_security);
  }
  return out;
}

Json separability_json(const SeparabilityVerdict& verdict, const Scenario& scenario) {
  if (const auto* ns = std::get_if<NonSeparable>(&verdict)) {
    return {{"verdict", "non-separable"},
            {"witness", witness_json(ns->witness, scenario.states)},
            {"trial", ns->trial},
            {"true_state", scenario.states.label(ns->true_state)},
            {"trials", ns->effort.trials},
            {"simulations", ns->effort.simulations}};
  }
  if (const auto* sc = std::get_if<SeparableCertified>(&verdict)) {
    return {{"verdict", "separable"}, {"certificate", certificate_json(sc->certificate, scenario)}};
  }
  const auto& unknown = std::get<SeparabilityUnknown>(verdict);
  return {{"verdict", "unknown"}, {"trials", unknown.effort.trials}, {"simulations", unknown.effort.simulations}};
}

namespace {

std::vector<Partition> partitions_from_json(const Json& j, const StateSpace& states) {
  std::vector<Partition> out;
  for (const auto& cells_json : j) {
    std::vector<std::vector<StateId>> cells;
    for (const auto& cell : cells_json) cells.push_back(read_states(cell, states, ""));
    out.emplace_back(states.size(), std::move(cells));
  }
  return out;
}

void collect_checks(const Json& node, const Scenario& scenario, const SecuritySet& x, const SignalStructure& signals,
                    bool& ok) {
  if (node.is_object()) {
    // A node carrying its own signal structure (adversarial constructions)
    // is checked against it instead of the scenario's.
    std::optional<SignalStructure> local;
    if (node.contains("signals") && node.at("signals").is_array()) {
      local.emplace(partitions_from_json(node.at("signals"), scenario.states));
    }
    const auto& active = local ? *local : signals;
    if (node.contains("witness") && node.at("witness").is_object()) {
      auto w = witness_from_json(node.at("witness"), scenario.states);
      if (!verify_witness(w, x, active)) ok = false;
    }
    if (node.contains("counterexample") && node.contains("event")) {
      const auto& ce = node.at("counterexample");
      const auto& e = scenario.event(node.at("event").get<std::string>());
      auto p = distribution_from_json(ce.at("first"), scenario.states);
      auto q = distribution_from_json(ce.at("second"), scenario.states);
      if (expectation(p, x) != expectation(q, x) || p.probability(e) == q.probability(e)) ok = false;
    }
    for (const auto& [key, value] : node.items()) {
      if (key != "witness") collect_checks(value, scenario, x, active, ok);
    }
  } else if (node.is_array()) {
    for (const auto& value : node) collect_checks(value, scenario, x, signals, ok);
  }
}

}  // namespace

bool reverify_report(const Json& report, const Scenario& scenario) {
  auto x = scenario.securities;
  if (report.contains("securities") && report.at("securities").is_array()) {
    x = scenario.securities_named(report.at("securities").get<std::vector<std::string>>());
  }
  bool ok = true;
  collect_checks(report, scenario, x, scenario.signals, ok);
  return ok;
}

}  // namespace infomarket
