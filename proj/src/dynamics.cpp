#include "infomarket/dynamics.hpp"

#include <string>

namespace infomarket {
namespace {

std::vector<StateId> cell_within(const std::vector<StateId>& cell, const Event& public_set) {
  std::vector<StateId> out;
  for (StateId s : cell) {
    if (public_set.contains(s)) out.push_back(s);
  }
  return out;
}

// States of `public_set` whose announcer cell (restricted to the set) has the
// announced expectation.
Event consistent_states(const Distribution& prior, const Partition& partition, const SecuritySet& x,
                        const Event& public_set, const Vec& announced) {
  std::vector<bool> keep(public_set.universe_size(), false);
  for (std::size_t c = 0; c < partition.cell_count(); ++c) {
    auto members = cell_within(partition.cells()[c], public_set);
    if (members.empty()) continue;
    auto value = conditional_expectation(prior, x, members);
    if (value && *value == announced) {
      for (StateId s : members) keep[s] = true;
    }
  }
  return Event(std::move(keep));
}

}  // namespace

const Vec& Trace::final_prediction() const {
  return announcements.empty() ? initial_prediction : announcements.back().prediction;
}

const Event& Trace::final_public_set() const {
  return announcements.empty() ? initial_public_set : announcements.back().public_set;
}

bool is_fixed_point(const Distribution& prior, const SignalStructure& signals, const SecuritySet& x,
                    const Event& public_set, const Vec& consensus) {
  for (const auto& partition : signals.partitions()) {
    for (const auto& cell : partition.cells()) {
      auto members = cell_within(cell, public_set);
      if (members.empty()) continue;
      auto value = conditional_expectation(prior, x, members);
      if (value && *value != consensus) return false;
    }
  }
  return true;
}

Trace simulate(const Distribution& prior, const SignalStructure& signals, const SecuritySet& x,
               StateId true_state, std::size_t max_rounds) {
  const auto n = prior.size();
  if (signals.universe_size() != n || x.state_count() != n) {
    throw InstanceError("prior, signal structure and securities over different state spaces");
  }
  if (true_state >= n) throw InstanceError("true state outside the state space");
  if (sgn(prior[true_state]) == 0) {
    throw ImpossibleStateError("true state has zero prior probability");
  }
  if (max_rounds == 0) throw PreconditionError("max_rounds must be at least 1");

  Trace trace;
  trace.true_state = true_state;
  trace.trader_count = signals.trader_count();
  trace.initial_public_set = prior.support();
  trace.initial_prediction = expectation(prior, x);

  Event public_set = trace.initial_public_set;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    for (std::size_t i = 0; i < signals.trader_count(); ++i) {
      const auto& partition = signals.partition(i);
      auto own = cell_within(partition.cell_of(true_state), public_set);
      auto announced = *conditional_expectation(prior, x, own);
      public_set = consistent_states(prior, partition, x, public_set, announced);
      trace.announcements.push_back(Announcement{round, i, std::move(announced), public_set});
    }
    trace.rounds = round;
    if (is_fixed_point(prior, signals, x, public_set, trace.final_prediction())) {
      trace.termination = Termination::fixed_point;
      return trace;
    }
  }
  trace.termination = Termination::round_cap;
  return trace;
}

Trace simulate(const Scenario& scenario, StateId true_state, std::size_t max_rounds) {
  return simulate(scenario.prior, scenario.signals, scenario.securities, true_state, max_rounds);
}

bool aggregated(const Trace& trace, const Distribution& prior, const SignalStructure& signals,
                const SecuritySet& x) {
  const auto& cell = signals.join().cell_of(trace.true_state);
  auto pooled = conditional_expectation(prior, x, cell);
  return pooled && *pooled == trace.final_prediction();
}

bool aggregated(const Trace& trace, const Scenario& scenario) {
  return aggregated(trace, scenario.prior, scenario.signals, scenario.securities);
}

std::optional<Witness> stall_witness(const Trace& trace, const Distribution& prior,
                                     const SignalStructure& signals, const SecuritySet& x) {
  if (trace.termination != Termination::fixed_point) {
    throw PreconditionError("trace ended at the round cap, not at a fixed point");
  }
  if (aggregated(trace, prior, signals, x)) return std::nullopt;
  return Witness{condition(prior, trace.final_public_set()), trace.final_prediction()};
}

std::optional<Witness> stall_witness(const Trace& trace, const Scenario& scenario) {
  return stall_witness(trace, scenario.prior, scenario.signals, scenario.securities);
}

}  // namespace infomarket
