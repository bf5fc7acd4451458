#include "infomarket/certify.hpp"

#include "infomarket/dynamics.hpp"
#include "infomarket/linalg.hpp"
#include "infomarket/lp.hpp"

namespace infomarket {

bool is_complete(const SecuritySet& x) {
  return rank(augmented_payoff_matrix(x), x.security_count() + 1) == x.state_count();
}

bool DistinguishabilityReport::all_distinguished() const {
  for (const auto& e : events) {
    if (!e.distinguished) return false;
  }
  return true;
}

namespace {

// Variables: P over `first` followed by P' over `second`.
// Rows: sum P = 1, sum P' = 1, then one row per security
//   sum P(w) x_j(w) - sum P'(w) x_j(w) = 0.
std::optional<PairCounterexample> pair_counterexample(const SecuritySet& x, const Event& e,
                                                      const std::vector<StateId>& first,
                                                      const std::vector<StateId>& second) {
  const std::size_t a = first.size();
  const std::size_t vars = a + second.size();
  const std::size_t m = x.security_count();
  Matrix rows(2 + m, Vec(vars, Rational(0)));
  Vec rhs(2 + m, Rational(0));
  rhs[0] = 1;
  rhs[1] = 1;
  Vec objective(vars, Rational(0));
  for (std::size_t k = 0; k < a; ++k) {
    rows[0][k] = 1;
    for (std::size_t j = 0; j < m; ++j) rows[2 + j][k] = x.at(first[k], j);
    if (e.contains(first[k])) objective[k] = 1;
  }
  for (std::size_t k = 0; k < second.size(); ++k) {
    rows[1][a + k] = 1;
    for (std::size_t j = 0; j < m; ++j) rows[2 + j][a + k] = -x.at(second[k], j);
    if (e.contains(second[k])) objective[a + k] = -1;
  }
  auto result = lp::maximize(rows, rhs, objective);
  if (result.status != lp::Status::optimal || sgn(result.value) == 0) return std::nullopt;

  const auto n = x.state_count();
  Vec p(n, Rational(0));
  Vec q(n, Rational(0));
  for (std::size_t k = 0; k < a; ++k) p[first[k]] = result.x[k];
  for (std::size_t k = 0; k < second.size(); ++k) q[second[k]] = result.x[a + k];
  PairCounterexample ce{Distribution(std::move(p)), Distribution(std::move(q)), 0, 0, 0, 0};
  ce.first_probability = ce.first.probability(e);
  ce.second_probability = ce.second.probability(e);
  return ce;
}

}  // namespace

DistinguishabilityReport distinguishes(const SecuritySet& x, std::span<const Event> events,
                                       const SignalStructure& signals) {
  if (x.state_count() != signals.universe_size()) {
    throw InstanceError("securities and signal structure over different state spaces");
  }
  const auto& cells = signals.join().cells();
  DistinguishabilityReport report;
  for (const auto& e : events) {
    if (e.universe_size() != x.state_count()) throw InstanceError("event over a different state space");
    EventDistinction verdict;
    for (std::size_t i = 0; i < cells.size() && verdict.distinguished; ++i) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        auto ce = pair_counterexample(x, e, cells[i], cells[k]);
        if (ce) {
          ce->first_element = i;
          ce->second_element = k;
          verdict.distinguished = false;
          verdict.counterexample = std::move(ce);
          break;
        }
      }
    }
    report.events.push_back(std::move(verdict));
  }
  return report;
}

bool distinguishes_within_element(const SecuritySet& x, const Event& e, const std::vector<StateId>& element) {
  const std::size_t m = x.security_count();
  // Columns: securities restricted to the element plus the ones vector.
  Matrix a(element.size(), Vec(m + 1));
  Vec target(element.size());
  for (std::size_t r = 0; r < element.size(); ++r) {
    for (std::size_t j = 0; j < m; ++j) a[r][j] = x.at(element[r], j);
    a[r][m] = 1;
    target[r] = e.contains(element[r]) ? 1 : 0;
  }
  return solve(a, m + 1, target).has_value();
}

bool verify_witness(const Witness& w, const SecuritySet& x, const SignalStructure& signals) {
  const auto& p = w.distribution;
  if (p.size() != x.state_count() || signals.universe_size() != x.state_count()) return false;
  if (w.consensus.size() != x.security_count()) return false;
  bool dissent = false;
  for (StateId s = 0; s < p.size(); ++s) {
    if (sgn(p[s]) == 0) continue;
    for (const auto& partition : signals.partitions()) {
      if (*conditional_expectation(p, x, partition.cell_of(s)) != w.consensus) return false;
    }
    if (*conditional_expectation(p, x, signals.join().cell_of(s)) != w.consensus) dissent = true;
  }
  return dissent;
}

std::string to_string(CertificateReason reason) {
  switch (reason) {
    case CertificateReason::complete_market:
      return "complete-market";
    case CertificateReason::informed_trader:
      return "informed-trader";
    case CertificateReason::sum_form:
      return "sum-form";
  }
  return "unknown";
}

std::optional<Certificate> sum_form_certificate(const SecuritySet& x, const SignalStructure& signals) {
  if (x.state_count() != signals.universe_size()) {
    throw InstanceError("securities and signal structure over different state spaces");
  }
  if (!signals.join().is_discrete()) return std::nullopt;

  // Unknowns: one value per (trader, cell); one equation per state.
  std::vector<std::size_t> offset;
  std::size_t unknowns = 0;
  for (const auto& p : signals.partitions()) {
    offset.push_back(unknowns);
    unknowns += p.cell_count();
  }
  Matrix a(x.state_count(), Vec(unknowns, Rational(0)));
  for (StateId s = 0; s < x.state_count(); ++s) {
    for (std::size_t i = 0; i < signals.trader_count(); ++i) {
      a[s][offset[i] + signals.partition(i).cell_index(s)] = 1;
    }
  }
  Certificate cert{CertificateReason::sum_form, std::nullopt, {}};
  for (std::size_t j = 0; j < x.security_count(); ++j) {
    auto f = solve(a, unknowns, x.column(j));
    if (!f) return std::nullopt;
    std::vector<Vec> per_trader;
    for (std::size_t i = 0; i < signals.trader_count(); ++i) {
      auto begin = f->begin() + static_cast<std::ptrdiff_t>(offset[i]);
      per_trader.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(signals.partition(i).cell_count()));
    }
    cert.signal_values.push_back(std::move(per_trader));
  }
  return cert;
}

std::optional<Certificate> separability_certificate(const SecuritySet& x, const SignalStructure& signals) {
  if (x.state_count() != signals.universe_size()) {
    throw InstanceError("securities and signal structure over different state spaces");
  }
  if (is_complete(x)) return Certificate{CertificateReason::complete_market, std::nullopt, {}};
  for (std::size_t i = 0; i < signals.trader_count(); ++i) {
    if (signals.partition(i) == signals.join()) {
      return Certificate{CertificateReason::informed_trader, i, {}};
    }
  }
  return sum_form_certificate(x, signals);
}

Distribution sample_prior(std::size_t states, std::size_t trial, std::mt19937_64& rng, unsigned max_numerator) {
  if (trial == 0) return Distribution::uniform(states);
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> support(states, false);
  bool any = false;
  while (!any) {
    for (std::size_t s = 0; s < states; ++s) {
      support[s] = coin(rng);
      any = any || support[s];
    }
  }
  std::uniform_int_distribution<unsigned> weight(1, std::max(1u, max_numerator));
  Vec mass(states, Rational(0));
  Rational total = 0;
  for (std::size_t s = 0; s < states; ++s) {
    if (!support[s]) continue;
    mass[s] = weight(rng);
    total += mass[s];
  }
  for (auto& m : mass) m /= total;
  return Distribution(std::move(mass));
}

SeparabilityVerdict search_witness(const SecuritySet& x, const SignalStructure& signals, const SearchConfig& config) {
  if (config.budget == 0) throw PreconditionError("witness search budget must be at least 1");
  if (auto cert = separability_certificate(x, signals)) return SeparableCertified{*std::move(cert)};

  const auto n = x.state_count();
  std::mt19937_64 rng(config.seed);
  SearchEffort effort;
  for (std::size_t trial = 0; trial < config.budget; ++trial) {
    auto prior = sample_prior(n, trial, rng, config.max_numerator);
    ++effort.trials;
    for (StateId s = 0; s < n; ++s) {
      if (sgn(prior[s]) == 0) continue;
      ++effort.simulations;
      auto trace = simulate(prior, signals, x, s, safe_round_limit(n));
      if (trace.termination != Termination::fixed_point) continue;
      auto w = stall_witness(trace, prior, signals, x);
      if (w && verify_witness(*w, x, signals)) return NonSeparable{*std::move(w), trial, s, effort};
    }
  }
  return SeparabilityUnknown{effort};
}

std::string to_string(Informativeness status) {
  switch (status) {
    case Informativeness::informative:
      return "informative";
    case Informativeness::not_informative:
      return "not-informative";
    case Informativeness::undetermined:
      return "undetermined";
  }
  return "unknown";
}

InformativenessVerdict is_informative(const SecuritySet& x, std::span<const Event> events,
                                      const SignalStructure& signals, const SearchConfig& config) {
  InformativenessVerdict v;
  v.distinction = distinguishes(x, events, signals);
  if (!v.distinction.all_distinguished()) {
    v.status = Informativeness::not_informative;
    if (auto cert = separability_certificate(x, signals)) {
      v.separability = SeparableCertified{*std::move(cert)};
    } else {
      v.separability = SeparabilityUnknown{};
    }
    return v;
  }
  v.separability = search_witness(x, signals, config);
  if (std::holds_alternative<NonSeparable>(v.separability)) {
    v.status = Informativeness::not_informative;
  } else if (std::holds_alternative<SeparableCertified>(v.separability)) {
    v.status = Informativeness::informative;
  } else {
    v.status = Informativeness::undetermined;
  }
  return v;
}

}  // namespace infomarket
