#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infomarket/certify.hpp"
#include "infomarket/core.hpp"

namespace infomarket {

// One Arrow-Debreu security per state.
SecuritySet complete_market(const StateSpace& states);

// Unique index per (trader, cell) signal: traders in declaration order, cells
// in canonical order. Signal j carries the value base^j.
struct SignalIdentifierMap {
  unsigned base = 10;
  std::vector<std::vector<std::size_t>> index;  // [trader][cell] -> j
  std::vector<Rational> value;                  // [j] -> base^j

  std::size_t signal_count() const { return value.size(); }
};

SignalIdentifierMap assign_signal_identifiers(const SignalStructure& signals, unsigned base);

// x(w) = sum over traders of base^(identifier of the trader's cell at w).
// Requires a join of singletons and base >= 2 (PreconditionError otherwise).
SecuritySet single_informative_security(const SignalStructure& signals, unsigned base,
                                        const std::string& name = "x");

// Join elements relabelled as states, so the single-security construction
// applies to signal structures with a coarser join.
struct JoinQuotient {
  StateSpace states;
  SignalStructure signals;
  std::vector<std::vector<StateId>> elements;  // quotient state -> original states
  std::vector<std::size_t> element_of;         // original state -> quotient state
  std::optional<Distribution> prior;           // push-forward, when given
};

JoinQuotient quotient_by_join(const StateSpace& states, const SignalStructure& signals,
                              const Distribution* prior = nullptr);

// Posterior over original states once the join element is identified.
Distribution recover_state_posterior(const JoinQuotient& quotient, std::size_t element,
                                     const Distribution& prior);

// max(0, min(|E|, |not E|) - 1).
std::size_t always_informative_lower_bound(const Event& e);

// Adversarial two-trader structure for a security set with too few linearly
// independent securities to be always informative on `e`.
struct AdversarialStructure {
  SignalStructure signals;
  Distribution prior;
  Vec consensus;
  Distribution q_event;           // positive part of a null vector on E
  Distribution q_event_alt;       // negative part of that vector
  Distribution q_complement;      // same on the complement
  Distribution q_complement_alt;
  // True when E_{Q_E}[X] != E_{Q_notE}[X]; then (prior, consensus) is a
  // separability witness. Otherwise (Q_E, Q_notE) defeats distinguishability.
  bool is_witness = false;
};

// Throws PreconditionError when rank(X) >= min(|E|, |not E|) - 1.
AdversarialStructure counterexample_signal_structure(const SecuritySet& x, const Event& e);

// Where a design instance came from, when produced by the set-cover reduction.
struct SetCoverInstance {
  std::vector<std::string> universe;
  std::vector<std::pair<std::string, std::vector<std::string>>> sets;
};

struct DesignInstance {
  StateSpace states;
  SecuritySet candidates;  // 0/1 payoffs only
  SignalStructure signals;
  std::vector<Event> events;
  std::optional<SetCoverInstance> provenance;

  // Throws InstanceError on non-event candidates or mismatched spaces.
  void validate() const;
};

struct SeparatingPair {
  StateId first = 0;
  StateId second = 0;

  bool operator==(const SeparatingPair&) const = default;
};

// Unordered state pairs that differ on at least one event of interest.
std::vector<SeparatingPair> separating_pairs(const std::vector<Event>& events, std::size_t states);

bool separates(const SecuritySet& candidates, std::size_t column, const SeparatingPair& pair);

enum class SelectionStatus { informative, undetermined, infeasible };

std::string to_string(SelectionStatus status);

struct Selection {
  SelectionStatus status = SelectionStatus::infeasible;
  std::vector<std::size_t> chosen;  // candidate indices, ascending
  std::size_t subsets_examined = 0;
  std::optional<CertificateReason> certificate;
};

// Minimum-cardinality informative subset. Subsets are enumerated by size then
// lexicographically; the separating-pair relaxation prunes before the exact
// distinguishability test, and separability is settled by certificate or
// witness search with `config`.
Selection minimal_event_set_exact(const DesignInstance& instance, const SearchConfig& config);

// Greedy separating-pair cover; requires a join of singletons.
Selection minimal_event_set_greedy(const DesignInstance& instance);

// States = universe plus a fresh state w0; one fully informed trader;
// candidate 1_S per set; single event "not w0". Throws InstanceError on
// duplicate set labels or unknown elements.
DesignInstance reduce_set_cover(const SetCoverInstance& sc);

}  // namespace infomarket
