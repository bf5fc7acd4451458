#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infomarket/core.hpp"
#include "infomarket/scenario.hpp"

namespace infomarket {

// One prediction in the market: who moved, what they announced, and the
// public possibility set after observers update on the announcement.
struct Announcement {
  std::size_t round = 0;   // 1-based
  std::size_t trader = 0;  // 0-based trader index
  Vec prediction;
  Event public_set;
};

enum class Termination { fixed_point, round_cap };

struct Trace {
  StateId true_state = 0;
  std::size_t trader_count = 0;
  Vec initial_prediction;
  Event initial_public_set;
  std::vector<Announcement> announcements;
  std::size_t rounds = 0;
  Termination termination = Termination::round_cap;

  const Vec& final_prediction() const;
  const Event& final_public_set() const;
};

// Market scoring rule with myopic Bayesian traders. Trader i announces
// E[X | Pi_i(w*) & S]; observers then drop every state of S whose own
// announcer cell would have produced a different announcement. The run stops
// after the first full round that leaves a provable fixed point (every
// trader's cell expectation on S equals the current consensus), or after
// `max_rounds`.
//
// Throws ImpossibleStateError if the prior rules out `true_state`.
Trace simulate(const Distribution& prior, const SignalStructure& signals, const SecuritySet& x,
               StateId true_state, std::size_t max_rounds);
Trace simulate(const Scenario& scenario, StateId true_state, std::size_t max_rounds);

// Rounds after which a run is guaranteed to have reached a fixed point.
inline std::size_t safe_round_limit(std::size_t states) { return states + 1; }

bool is_fixed_point(const Distribution& prior, const SignalStructure& signals, const SecuritySet& x,
                    const Event& public_set, const Vec& consensus);

// Final prediction equals E[X | join cell of w*].
bool aggregated(const Trace& trace, const Distribution& prior, const SignalStructure& signals,
                const SecuritySet& x);
bool aggregated(const Trace& trace, const Scenario& scenario);

// For a stalled run: the prior restricted to the final public set together
// with the final consensus. Throws PreconditionError when the trace hit the
// round cap.
std::optional<Witness> stall_witness(const Trace& trace, const Distribution& prior,
                                     const SignalStructure& signals, const SecuritySet& x);
std::optional<Witness> stall_witness(const Trace& trace, const Scenario& scenario);

}  // namespace infomarket
