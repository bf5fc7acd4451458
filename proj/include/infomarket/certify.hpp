#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "infomarket/core.hpp"

namespace infomarket {

// Securities plus a constant payoff reach rank |states|.
bool is_complete(const SecuritySet& x);

// Two posteriors, each supported inside one join element, with equal
// security expectations but different probabilities of the event.
struct PairCounterexample {
  Distribution first;
  Distribution second;
  std::size_t first_element = 0;   // join cell index
  std::size_t second_element = 0;  // join cell index
  Rational first_probability;
  Rational second_probability;
};

struct EventDistinction {
  bool distinguished = true;
  std::optional<PairCounterexample> counterexample;
};

struct DistinguishabilityReport {
  std::vector<EventDistinction> events;  // parallel to the queried events
  // Pairs are drawn from any two join elements, not only a shared one.
  bool any_pair_reading = true;

  bool all_distinguished() const;
};

// For every ordered pair of join elements (including an element with itself)
// maximises P(E) - P'(E) over posteriors P, P' supported in those elements
// with E_P[X] = E_P'[X], using the exact simplex. The event is distinguished
// iff every such maximum is zero.
DistinguishabilityReport distinguishes(const SecuritySet& x, std::span<const Event> events,
                                       const SignalStructure& signals);

// Linear-algebra test for one join element: the indicator of E on the element
// lies in the span of the security columns and the ones vector restricted to
// it.
bool distinguishes_within_element(const SecuritySet& x, const Event& e, const std::vector<StateId>& element);

bool verify_witness(const Witness& w, const SecuritySet& x, const SignalStructure& signals);

enum class CertificateReason { complete_market, informed_trader, sum_form };

std::string to_string(CertificateReason reason);

struct Certificate {
  CertificateReason reason = CertificateReason::complete_market;
  // informed_trader: the trader whose partition equals the join.
  std::optional<std::size_t> trader;
  // sum_form: [security][trader][cell] value of the per-signal function.
  std::vector<std::vector<Vec>> signal_values;
};

// Sufficient conditions for separability, tried in the order complete
// market, fully informed trader, additive per-signal decomposition.
std::optional<Certificate> separability_certificate(const SecuritySet& x, const SignalStructure& signals);

// Join of singletons and every security equal to a sum over traders of a
// function of that trader's cell, found by exact linear solve.
std::optional<Certificate> sum_form_certificate(const SecuritySet& x, const SignalStructure& signals);

struct SearchConfig {
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  unsigned max_numerator = 20;
};

struct SearchEffort {
  std::size_t trials = 0;
  std::size_t simulations = 0;
};

struct NonSeparable {
  Witness witness;
  std::size_t trial = 0;
  StateId true_state = 0;
  SearchEffort effort;
};

struct SeparableCertified {
  Certificate certificate;
};

struct SeparabilityUnknown {
  SearchEffort effort;
};

using SeparabilityVerdict = std::variant<SeparabilityUnknown, NonSeparable, SeparableCertified>;

// Prior used for `trial`: trial 0 is uniform over all states; later trials
// draw a non-empty support and integer weights in [1, max_numerator].
Distribution sample_prior(std::size_t states, std::size_t trial, std::mt19937_64& rng, unsigned max_numerator);

// Certificate first; otherwise runs the dynamics from every supported state
// under `budget` sampled priors and returns the first verified stall.
SeparabilityVerdict search_witness(const SecuritySet& x, const SignalStructure& signals, const SearchConfig& config);

enum class Informativeness { informative, not_informative, undetermined };

std::string to_string(Informativeness status);

struct InformativenessVerdict {
  Informativeness status = Informativeness::undetermined;
  DistinguishabilityReport distinction;
  SeparabilityVerdict separability;
};

// Distinguishability is decided exactly; separability by certificate or
// witness search (skipped when distinguishability already fails).
InformativenessVerdict is_informative(const SecuritySet& x, std::span<const Event> events,
                                      const SignalStructure& signals, const SearchConfig& config);

}  // namespace infomarket
