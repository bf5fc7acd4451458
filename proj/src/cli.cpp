#include "infomarket/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ostream>
#include <set>
#include <sstream>

namespace infomarket::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

bool uses_randomness(const Options& o) {
  return o.command == "check" || o.command == "witness-search" || o.command == "reduce-setcover" ||
         (o.command == "design" && o.design_kind == "minimal");
}

std::string join_strings(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string format_vector(const Vec& v) { return "(" + join_strings(to_strings(v)) + ")"; }

std::string format_event(const Event& e, const StateSpace& states) {
  std::vector<std::string> labels;
  for (StateId s : e.members()) labels.push_back(states.label(s));
  return "{" + join_strings(labels) + "}";
}

std::string format_distribution(const Distribution& d, const StateSpace& states) {
  std::vector<std::string> parts;
  for (StateId s = 0; s < d.size(); ++s) {
    if (sgn(d[s]) != 0) parts.push_back(states.label(s) + ":" + to_string(d[s]));
  }
  return "{" + join_strings(parts) + "}";
}

Json args_json(const Options& o) {
  Json a = Json::object();
  if (!o.design_kind.empty()) a["kind"] = o.design_kind;
  if (o.true_state) a["true_state"] = *o.true_state;
  if (o.max_rounds) a["max_rounds"] = *o.max_rounds;
  if (!o.events.empty()) a["events"] = o.events;
  if (!o.candidates.empty()) a["candidates"] = o.candidates;
  a["budget"] = o.budget;
  a["base"] = o.base;
  return a;
}

Json security_payoffs_json(const SecuritySet& x, std::size_t j, const StateSpace& states) {
  Json payoffs = Json::object();
  for (StateId s = 0; s < x.state_count(); ++s) payoffs[states.label(s)] = to_string(x.at(s, j));
  return payoffs;
}

Json securities_json(const SecuritySet& x, const StateSpace& states) {
  Json out = Json::array();
  for (std::size_t j = 0; j < x.security_count(); ++j) {
    out.push_back({{"name", x.name(j)}, {"payoffs", security_payoffs_json(x, j, states)}});
  }
  return out;
}

std::vector<std::string> names_of(const std::vector<std::size_t>& chosen, const SecuritySet& x) {
  std::vector<std::string> out;
  for (auto j : chosen) out.push_back(x.name(j));
  return out;
}

struct Selected {
  Scenario scenario;  // scenario restricted to the chosen securities
  std::vector<std::string> event_names;
  std::vector<Event> events;
};

Selected select(const Options& o, const Scenario& base) {
  Selected sel{base, {}, {}};
  if (!o.candidates.empty()) sel.scenario.securities = base.securities_named(o.candidates);
  if (o.events.empty()) {
    for (const auto& e : base.events) sel.event_names.push_back(e.name);
  } else {
    sel.event_names = o.events;
  }
  sel.events = base.events_named(sel.event_names);
  return sel;
}

std::string separability_summary(const SeparabilityVerdict& v, const StateSpace& states) {
  if (const auto* ns = std::get_if<NonSeparable>(&v)) {
    return "non-separable; witness P=" + format_distribution(ns->witness.distribution, states) +
           " v=" + format_vector(ns->witness.consensus) + " (trial " + std::to_string(ns->trial) + ")";
  }
  if (const auto* sc = std::get_if<SeparableCertified>(&v)) {
    return "separable (" + to_string(sc->certificate.reason) + ")";
  }
  const auto& u = std::get<SeparabilityUnknown>(v);
  return "unknown after " + std::to_string(u.effort.trials) + " priors / " + std::to_string(u.effort.simulations) +
         " runs";
}

RunReport run_check(const Options& o, const Scenario& base, Json body) {
  auto sel = select(o, base);
  const auto& sc = sel.scenario;
  SearchConfig config{o.budget, o.seed.value_or(0)};
  auto verdict = is_informative(sc.securities, sel.events, sc.signals, config);
  body["securities"] = sc.securities.names();
  body["events"] = sel.event_names;
  body["status"] = to_string(verdict.status);
  body["distinguishes"] = distinction_json(verdict.distinction, sel.event_names, sc);
  body["separability"] = separability_json(verdict.separability, sc);

  std::ostringstream h;
  h << "check: " << to_string(verdict.status) << "\n";
  for (std::size_t k = 0; k < sel.event_names.size(); ++k) {
    const auto& d = verdict.distinction.events[k];
    h << "  event " << sel.event_names[k] << ": " << (d.distinguished ? "distinguished" : "not distinguished");
    if (d.counterexample) {
      h << " (P=" << format_distribution(d.counterexample->first, sc.states)
        << " vs P'=" << format_distribution(d.counterexample->second, sc.states) << ")";
    }
    h << "\n";
  }
  h << "  separability: " << separability_summary(verdict.separability, sc.states) << "\n";

  int code = verdict.status == Informativeness::informative       ? kPositive
             : verdict.status == Informativeness::not_informative ? kNegative
                                                                  : kUndetermined;
  return RunReport{code, std::move(body), h.str()};
}

RunReport run_simulate(const Options& o, const Scenario& base, Json body) {
  auto sel = select(o, base);
  const auto& sc = sel.scenario;
  const auto max_rounds = o.max_rounds.value_or(safe_round_limit(sc.states.size()));
  std::vector<StateId> starts;
  if (o.true_state) {
    starts.push_back(sc.states.index_of(*o.true_state));
  } else {
    starts = sc.prior.support().members();
  }
  body["securities"] = sc.securities.names();
  Json runs = Json::array();
  std::ostringstream h;
  int code = kPositive;
  for (StateId start : starts) {
    auto trace = simulate(sc, start, max_rounds);
    auto ledger = settle(trace, start, sc.securities, sc.scoring);
    Json run{{"trace", trace_json(trace, sc)}, {"ledger", ledger_json(ledger, sc)}};
    h << "true state " << sc.states.label(start) << ": initial " << format_vector(trace.initial_prediction) << "\n";
    for (const auto& a : trace.announcements) {
      h << "  round " << a.round << " " << sc.trader_names[a.trader] << " -> " << format_vector(a.prediction)
        << "  S=" << format_event(a.public_set, sc.states) << "\n";
    }
    if (trace.termination == Termination::round_cap) {
      run["aggregated"] = nullptr;
      h << "  round cap reached after " << trace.rounds << " rounds\n";
      code = kUndetermined;
    } else {
      bool agg = aggregated(trace, sc);
      run["aggregated"] = agg;
      h << "  fixed point after " << trace.rounds << " rounds; final " << format_vector(trace.final_prediction())
        << (agg ? "; aggregated" : "; NOT aggregated") << "\n";
      if (auto w = stall_witness(trace, sc)) {
        run["witness"] = witness_json(*w, sc.states);
        run["witness_verified"] = verify_witness(*w, sc.securities, sc.signals);
        h << "  stall witness P=" << format_distribution(w->distribution, sc.states)
          << " v=" << format_vector(w->consensus) << "\n";
        if (code == kPositive) code = kNegative;
      }
    }
    h << "  payments: " << to_string(ledger.total()) << " total\n";
    runs.push_back(std::move(run));
  }
  body["runs"] = std::move(runs);
  return RunReport{code, std::move(body), h.str()};
}

Json selection_json(const Selection& s, const SecuritySet& x) {
  Json out{{"status", to_string(s.status)}, {"securities", names_of(s.chosen, x)}, {"size", s.chosen.size()},
           {"subsets_examined", s.subsets_examined}};
  if (s.certificate) out["certificate"] = to_string(*s.certificate);
  return out;
}

int selection_code(const Selection& s) {
  switch (s.status) {
    case SelectionStatus::informative:
      return kPositive;
    case SelectionStatus::undetermined:
      return kUndetermined;
    case SelectionStatus::infeasible:
      return kInfeasible;
  }
  return kInfeasible;
}

RunReport run_design(const Options& o, const Scenario& base, Json body) {
  const auto& kind = o.design_kind;
  std::ostringstream h;
  if (kind == "complete") {
    auto x = complete_market(base.states);
    body["securities"] = securities_json(x, base.states);
    body["complete"] = is_complete(x);
    h << "complete market: " << x.security_count() << " Arrow-Debreu securities\n";
    return RunReport{kPositive, std::move(body), h.str()};
  }
  if (kind == "single") {
    auto x = single_informative_security(base.signals, o.base);
    auto ids = assign_signal_identifiers(base.signals, o.base);
    Json idj = Json::array();
    for (std::size_t i = 0; i < base.signals.trader_count(); ++i) {
      const auto& p = base.signals.partition(i);
      for (std::size_t c = 0; c < p.cell_count(); ++c) {
        idj.push_back({{"trader", base.trader_names[i]},
                       {"cell", event_json(p.cell_event(c), base.states)},
                       {"index", ids.index[i][c]},
                       {"value", to_string(ids.value[ids.index[i][c]])}});
      }
    }
    auto payoffs = x.column(0);
    std::set<Rational> distinct(payoffs.begin(), payoffs.end());
    auto cert = separability_certificate(x, base.signals);
    body["security"] = {{"name", x.name(0)}, {"payoffs", security_payoffs_json(x, 0, base.states)}};
    body["identifiers"] = std::move(idj);
    body["pairwise_distinct"] = distinct.size() == x.state_count();
    body["certificate"] = cert ? certificate_json(*cert, base) : Json(nullptr);
    h << "single informative security (base " << o.base << "):\n";
    for (StateId s = 0; s < x.state_count(); ++s) h << "  " << base.states.label(s) << ": " << to_string(x.at(s, 0)) << "\n";
    return RunReport{kPositive, std::move(body), h.str()};
  }
  if (kind == "quotient") {
    auto q = quotient_by_join(base.states, base.signals, &base.prior);
    auto x = single_informative_security(q.signals, o.base);
    Json elements = Json::array();
    for (std::size_t e = 0; e < q.elements.size(); ++e) {
      elements.push_back({{"label", q.states.label(e)},
                          {"states", event_json(Event(base.states.size(), q.elements[e]), base.states)},
                          {"payoff", to_string(x.at(e, 0))},
                          {"prior", to_string((*q.prior)[e])}});
    }
    body["elements"] = std::move(elements);
    h << "join quotient: " << q.elements.size() << " elements\n";
    for (std::size_t e = 0; e < q.elements.size(); ++e) {
      h << "  " << q.states.label(e) << ": " << to_string(x.at(e, 0)) << "\n";
    }
    return RunReport{kPositive, std::move(body), h.str()};
  }
  if (kind == "lower-bound") {
    auto sel = select(o, base);
    Json bounds = Json::array();
    for (std::size_t k = 0; k < sel.events.size(); ++k) {
      auto b = always_informative_lower_bound(sel.events[k]);
      bounds.push_back({{"event", sel.event_names[k]}, {"bound", b}});
      h << "event " << sel.event_names[k] << ": at least " << b << " linearly independent securities\n";
    }
    body["bounds"] = std::move(bounds);
    return RunReport{kPositive, std::move(body), h.str()};
  }
  if (kind == "minimal" || kind == "greedy") {
    auto sel = select(o, base);
    DesignInstance inst{base.states, sel.scenario.securities, base.signals, sel.events, std::nullopt};
    auto s = kind == "minimal" ? minimal_event_set_exact(inst, SearchConfig{o.budget, o.seed.value_or(0)})
                               : minimal_event_set_greedy(inst);
    body["events"] = sel.event_names;
    body["selection"] = selection_json(s, inst.candidates);
    h << kind << " selection: " << to_string(s.status);
    if (s.status != SelectionStatus::infeasible) h << " {" << join_strings(names_of(s.chosen, inst.candidates)) << "}";
    h << "\n";
    return RunReport{selection_code(s), std::move(body), h.str()};
  }
  throw UsageError("unknown design kind '" + kind + "'");
}

RunReport run_witness_search(const Options& o, const Scenario& base, Json body) {
  auto sel = select(o, base);
  const auto& sc = sel.scenario;
  auto verdict = search_witness(sc.securities, sc.signals, SearchConfig{o.budget, o.seed.value_or(0)});
  body["securities"] = sc.securities.names();
  body["separability"] = separability_json(verdict, sc);
  int code = std::holds_alternative<NonSeparable>(verdict)        ? kNegative
             : std::holds_alternative<SeparableCertified>(verdict) ? kPositive
                                                                   : kUndetermined;
  return RunReport{code, std::move(body), "witness-search: " + separability_summary(verdict, sc.states) + "\n"};
}

RunReport run_counterexample(const Options& o, const Scenario& base, Json body) {
  if (o.events.size() != 1) throw UsageError("counterexample needs exactly one --events name");
  auto sel = select(o, base);
  const auto& sc = sel.scenario;
  const auto& e = sel.events.front();
  auto adv = counterexample_signal_structure(sc.securities, e);

  Json signals = Json::array();
  for (const auto& p : adv.signals.partitions()) signals.push_back(partition_json(p, sc.states));
  Json a{{"signals", std::move(signals)},
         {"prior", distribution_json(adv.prior, sc.states)},
         {"consensus", vector_json(adv.consensus)},
         {"q_event", distribution_json(adv.q_event, sc.states)},
         {"q_event_alt", distribution_json(adv.q_event_alt, sc.states)},
         {"q_complement", distribution_json(adv.q_complement, sc.states)},
         {"q_complement_alt", distribution_json(adv.q_complement_alt, sc.states)},
         {"is_witness", adv.is_witness}};
  std::ostringstream h;
  h << "counterexample for event " << o.events.front() << " (bound " << always_informative_lower_bound(e) << "):\n";
  for (std::size_t i = 0; i < adv.signals.trader_count(); ++i) {
    h << "  trader " << i + 1 << ":";
    for (std::size_t c = 0; c < adv.signals.partition(i).cell_count(); ++c) {
      h << " " << format_event(adv.signals.partition(i).cell_event(c), sc.states);
    }
    h << "\n";
  }
  h << "  prior " << format_distribution(adv.prior, sc.states) << "  consensus " << format_vector(adv.consensus) << "\n";
  if (adv.is_witness) {
    Witness w{adv.prior, adv.consensus};
    a["witness"] = witness_json(w, sc.states);
    Json stalls = Json::array();
    bool all_stall = true;
    for (StateId s : adv.prior.support().members()) {
      auto trace = simulate(adv.prior, adv.signals, sc.securities, s, safe_round_limit(sc.states.size()));
      bool stalled = trace.termination == Termination::fixed_point &&
                     !aggregated(trace, adv.prior, adv.signals, sc.securities) &&
                     trace.final_prediction() == adv.consensus;
      all_stall = all_stall && stalled;
      stalls.push_back({{"true_state", sc.states.label(s)},
                        {"final_prediction", vector_json(trace.final_prediction())},
                        {"stalled", stalled}});
    }
    a["stalls"] = std::move(stalls);
    h << "  witness verified: " << (verify_witness(w, sc.securities, adv.signals) ? "yes" : "no")
      << "; dynamics stall from every supported state: " << (all_stall ? "yes" : "no") << "\n";
  } else {
    a["distinguishability"] = {{"event", o.events.front()},
                               {"counterexample",
                                {{"first", distribution_json(adv.q_event, sc.states)},
                                 {"second", distribution_json(adv.q_complement, sc.states)},
                                 {"first_probability", to_string(adv.q_event.probability(e))},
                                 {"second_probability", to_string(adv.q_complement.probability(e))}}}};
    h << "  Q_E and Q_notE share expectations but differ on the event\n";
  }
  body["securities"] = sc.securities.names();
  body["adversarial"] = std::move(a);
  return RunReport{kNegative, std::move(body), h.str()};
}

RunReport run_reduce(const Options& o, const SetCoverInstance& sc, Json body) {
  auto inst = reduce_set_cover(sc);
  auto exact = minimal_event_set_exact(inst, SearchConfig{o.budget, o.seed.value_or(0)});
  auto greedy = minimal_event_set_greedy(inst);
  auto scenario = scenario_from_design(inst);
  scenario.events.front().name = "covered";
  body["set_cover"] = to_json(sc);
  body["scenario"] = to_json(scenario);
  body["minimum"] = selection_json(exact, inst.candidates);
  body["greedy"] = selection_json(greedy, inst.candidates);
  std::ostringstream h;
  h << "reduced " << sc.universe.size() << " elements / " << sc.sets.size() << " sets; outside state "
    << inst.states.label(inst.states.size() - 1) << "\n";
  h << "  minimum: " << to_string(exact.status);
  if (exact.status != SelectionStatus::infeasible) h << " {" << join_strings(names_of(exact.chosen, inst.candidates)) << "}";
  h << "\n  greedy: " << to_string(greedy.status);
  if (greedy.status != SelectionStatus::infeasible) h << " {" << join_strings(names_of(greedy.chosen, inst.candidates)) << "}";
  h << "\n";
  return RunReport{selection_code(exact), std::move(body), h.str()};
}

Json base_body(const Options& o) {
  Json body;
  body["command"] = o.command;
  body["args"] = args_json(o);
  body["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
  return body;
}

void check_options(const Options& o) {
  if (o.json && !o.seed && uses_randomness(o)) throw UsageError("--seed is required together with --json for " + o.command);
  if (o.budget == 0) throw UsageError("--budget must be at least 1");
  if (o.max_rounds && *o.max_rounds == 0) throw UsageError("--max-rounds must be at least 1");
  if (o.base < 2) throw UsageError("--base must be at least 2");
}

}  // namespace

RunReport run(const Options& o, const Scenario& scenario) {
  check_options(o);
  auto start = std::chrono::steady_clock::now();
  Json body = base_body(o);
  RunReport report;
  if (o.command == "check") {
    report = run_check(o, scenario, std::move(body));
  } else if (o.command == "simulate") {
    report = run_simulate(o, scenario, std::move(body));
  } else if (o.command == "design") {
    report = run_design(o, scenario, std::move(body));
  } else if (o.command == "witness-search") {
    report = run_witness_search(o, scenario, std::move(body));
  } else if (o.command == "counterexample") {
    report = run_counterexample(o, scenario, std::move(body));
  } else {
    throw UsageError("unknown command '" + o.command + "'");
  }
  report.body["exit_code"] = report.exit_code;
  if (o.timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.body["timing_ms"] = ms;
  }
  return report;
}

RunReport run(const Options& o, const SetCoverInstance& set_cover) {
  check_options(o);
  auto report = run_reduce(o, set_cover, base_body(o));
  report.body["exit_code"] = report.exit_code;
  return report;
}

RunReport run(const Options& o) {
  if (o.command == "reduce-setcover") return run(o, parse_set_cover(o.input));
  return run(o, parse_scenario(o.input));
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and verify informative security sets for prediction markets", "infomarket"};
  app.require_subcommand(1);
  Options o;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--events", o.events, "Event names (comma separated)")->delimiter(',');
    sub->add_option("--candidates", o.candidates, "Security names to use (comma separated)")->delimiter(',');
    sub->add_option("--budget", o.budget, "Number of sampled priors for witness search");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_flag("--json", o.json, "Machine-readable report");
    sub->add_flag("--timing", o.timing, "Include wall time in the report");
  };

  auto* check = app.add_subcommand("check", "Decide informativeness of the securities on the events");
  auto* sim = app.add_subcommand("simulate", "Run the market with myopic traders");
  auto* design = app.add_subcommand("design", "Construct security sets");
  auto* search = app.add_subcommand("witness-search", "Search for a separability witness");
  auto* counter = app.add_subcommand("counterexample", "Adversarial signal structure for one event");
  auto* reduce = app.add_subcommand("reduce-setcover", "Reduce a set-cover instance to informative event set");
  for (auto* sub : {check, sim, design, search, counter, reduce}) add_common(sub);
  design->add_option("kind", o.design_kind, "complete | single | quotient | lower-bound | minimal | greedy")
      ->required()
      ->check(CLI::IsMember({"complete", "single", "quotient", "lower-bound", "minimal", "greedy"}));
  for (auto* sub : {check, sim, design, search, counter, reduce}) {
    sub->add_option("input", o.input, sub == reduce ? "Set-cover JSON file" : "Scenario JSON file")->required();
  }
  sim->add_option("--true-state", o.true_state, "True state label (default: every supported state)");
  sim->add_option("--max-rounds", o.max_rounds, "Round cap (default: states + 1)");
  design->add_option("--base", o.base, "Identifier base for the single security");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }
  o.seed = seed;
  for (auto* sub : {check, sim, design, search, counter, reduce}) {
    if (sub->parsed()) o.command = sub->get_name();
  }

  try {
    auto report = run(o);
    if (o.json) {
      out << report.body.dump(2) << "\n";
    } else {
      out << report.human;
    }
    return report.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ImpossibleStateError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

}  // namespace infomarket::cli
