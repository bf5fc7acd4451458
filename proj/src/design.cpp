#include "infomarket/design.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "infomarket/linalg.hpp"

namespace infomarket {

SecuritySet complete_market(const StateSpace& states) {
  const auto n = states.size();
  std::vector<std::string> names;
  std::vector<Vec> rows(n, Vec(n, Rational(0)));
  for (StateId s = 0; s < n; ++s) {
    names.push_back("ad_" + states.label(s));
    rows[s][s] = 1;
  }
  return SecuritySet(std::move(names), std::move(rows));
}

SignalIdentifierMap assign_signal_identifiers(const SignalStructure& signals, unsigned base) {
  if (base < 2) throw PreconditionError("identifier base must be at least 2");
  SignalIdentifierMap map;
  map.base = base;
  mpz_class power = 1;
  for (const auto& p : signals.partitions()) {
    std::vector<std::size_t> ids;
    for (std::size_t c = 0; c < p.cell_count(); ++c) {
      ids.push_back(map.value.size());
      map.value.emplace_back(power);
      power *= base;
    }
    map.index.push_back(std::move(ids));
  }
  return map;
}

SecuritySet single_informative_security(const SignalStructure& signals, unsigned base, const std::string& name) {
  if (!signals.join().is_discrete()) {
    throw PreconditionError(
        "single informative security needs a join of singletons; quotient the state space by the join first");
  }
  auto map = assign_signal_identifiers(signals, base);
  const auto n = signals.universe_size();
  std::vector<Vec> rows(n, Vec(1, Rational(0)));
  for (StateId s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < signals.trader_count(); ++i) {
      rows[s][0] += map.value[map.index[i][signals.partition(i).cell_index(s)]];
    }
  }
  return SecuritySet({name}, std::move(rows));
}

JoinQuotient quotient_by_join(const StateSpace& states, const SignalStructure& signals, const Distribution* prior) {
  if (states.size() != signals.universe_size()) throw InstanceError("state space and signal structure differ in size");
  const auto& join_cells = signals.join().cells();
  const auto k = join_cells.size();
  std::vector<std::string> labels;
  std::vector<std::size_t> element_of(states.size());
  for (std::size_t e = 0; e < k; ++e) {
    std::string label;
    for (StateId s : join_cells[e]) {
      if (!label.empty()) label += '|';
      label += states.label(s);
      element_of[s] = e;
    }
    labels.push_back(std::move(label));
  }
  std::vector<Partition> partitions;
  for (const auto& p : signals.partitions()) {
    std::vector<std::vector<StateId>> cells;
    for (const auto& cell : p.cells()) {
      std::set<StateId> elements;
      for (StateId s : cell) elements.insert(element_of[s]);
      cells.emplace_back(elements.begin(), elements.end());
    }
    partitions.emplace_back(k, std::move(cells));
  }
  std::optional<Distribution> pushed;
  if (prior) {
    Vec mass(k, Rational(0));
    for (StateId s = 0; s < states.size(); ++s) mass[element_of[s]] += (*prior)[s];
    pushed = Distribution(std::move(mass));
  }
  return JoinQuotient{StateSpace(std::move(labels)), SignalStructure(std::move(partitions)), join_cells,
                      std::move(element_of), std::move(pushed)};
}

Distribution recover_state_posterior(const JoinQuotient& quotient, std::size_t element, const Distribution& prior) {
  return condition(prior, Event(prior.size(), quotient.elements.at(element)));
}

std::size_t always_informative_lower_bound(const Event& e) {
  auto inside = e.size();
  auto outside = e.universe_size() - inside;
  auto smaller = std::min(inside, outside);
  return smaller == 0 ? 0 : smaller - 1;
}

namespace {

// Null vector of (M'_D)^T over the states of `side`, sign-normalised so its
// first non-zero entry is positive, split into normalised positive and
// negative parts.
std::pair<Distribution, Distribution> balanced_pair(const SecuritySet& x, const std::vector<StateId>& side) {
  const std::size_t m = x.security_count();
  Matrix restricted(side.size());
  for (std::size_t r = 0; r < side.size(); ++r) {
    restricted[r] = x.payoff(side[r]);
    restricted[r].emplace_back(1);
  }
  auto basis = nullspace(transpose(restricted, m + 1), side.size());
  if (basis.empty()) throw PreconditionError("no null vector: securities already distinguish this side");
  auto delta = basis.front();
  auto first = std::find_if(delta.begin(), delta.end(), [](const Rational& v) { return sgn(v) != 0; });
  if (sgn(*first) < 0) {
    for (auto& v : delta) v = -v;
  }
  const auto n = x.state_count();
  Vec plus(n, Rational(0));
  Vec minus(n, Rational(0));
  Rational plus_total = 0;
  Rational minus_total = 0;
  for (std::size_t r = 0; r < side.size(); ++r) {
    if (sgn(delta[r]) > 0) {
      plus[side[r]] = delta[r];
      plus_total += delta[r];
    } else if (sgn(delta[r]) < 0) {
      minus[side[r]] = -delta[r];
      minus_total -= delta[r];
    }
  }
  for (auto& v : plus) v /= plus_total;
  for (auto& v : minus) v /= minus_total;
  return {Distribution(std::move(plus)), Distribution(std::move(minus))};
}

std::vector<StateId> support_members(const Distribution& d) { return d.support().members(); }

std::vector<StateId> unite(std::vector<StateId> a, const std::vector<StateId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

AdversarialStructure counterexample_signal_structure(const SecuritySet& x, const Event& e) {
  const auto n = x.state_count();
  if (e.universe_size() != n) throw InstanceError("event over a different state space");
  const auto inside = e.size();
  const auto smaller = std::min(inside, n - inside);
  const auto independent = rank(payoff_matrix(x), x.security_count());
  if (smaller < 1 || independent + 1 >= smaller) {
    throw PreconditionError("securities have " + std::to_string(independent) +
                            " independent columns; the construction needs fewer than min(|E|,|not E|) - 1");
  }
  auto [q_e, q_e_alt] = balanced_pair(x, e.members());
  auto [q_c, q_c_alt] = balanced_pair(x, e.complement().members());

  auto a = support_members(q_e);
  auto a_alt = support_members(q_e_alt);
  auto b = support_members(q_c);
  auto b_alt = support_members(q_c_alt);
  std::vector<bool> used(n, false);
  for (const auto* part : {&a, &a_alt, &b, &b_alt}) {
    for (StateId s : *part) used[s] = true;
  }
  std::vector<StateId> leftover;
  for (StateId s = 0; s < n; ++s) {
    if (!used[s]) leftover.push_back(s);
  }
  auto cells_for = [&](std::vector<StateId> c1, std::vector<StateId> c2) {
    std::vector<std::vector<StateId>> cells{std::move(c1), std::move(c2)};
    if (!leftover.empty()) cells.push_back(leftover);
    return Partition(n, std::move(cells));
  };
  SignalStructure signals(
      {cells_for(unite(a, b), unite(a_alt, b_alt)), cells_for(unite(a, b_alt), unite(a_alt, b))});

  Vec mass(n, Rational(0));
  for (const auto* q : {&q_e, &q_e_alt, &q_c, &q_c_alt}) {
    for (StateId s = 0; s < n; ++s) mass[s] += (*q)[s] / 4;
  }
  auto value_e = expectation(q_e, x);
  auto value_c = expectation(q_c, x);
  Vec consensus(x.security_count());
  for (std::size_t j = 0; j < consensus.size(); ++j) consensus[j] = (value_e[j] + value_c[j]) / 2;
  bool witness = value_e != value_c;
  return AdversarialStructure{std::move(signals), Distribution(std::move(mass)), std::move(consensus),
                              std::move(q_e), std::move(q_e_alt), std::move(q_c), std::move(q_c_alt), witness};
}

void DesignInstance::validate() const {
  const auto n = states.size();
  if (candidates.state_count() != n || signals.universe_size() != n) {
    throw InstanceError("design instance components over different state spaces");
  }
  for (const auto& row : candidates.rows()) {
    for (const auto& v : row) {
      if (v != 0 && v != 1) throw InstanceError("candidate securities must pay 0 or 1 in every state");
    }
  }
  for (const auto& e : events) {
    if (e.universe_size() != n) throw InstanceError("event over a different state space");
  }
}

std::vector<SeparatingPair> separating_pairs(const std::vector<Event>& events, std::size_t states) {
  std::vector<SeparatingPair> out;
  for (StateId a = 0; a < states; ++a) {
    for (StateId b = a + 1; b < states; ++b) {
      for (const auto& e : events) {
        if (e.contains(a) != e.contains(b)) {
          out.push_back({a, b});
          break;
        }
      }
    }
  }
  return out;
}

bool separates(const SecuritySet& candidates, std::size_t column, const SeparatingPair& pair) {
  return candidates.at(pair.first, column) != candidates.at(pair.second, column);
}

std::string to_string(SelectionStatus status) {
  switch (status) {
    case SelectionStatus::informative:
      return "informative";
    case SelectionStatus::undetermined:
      return "undetermined";
    case SelectionStatus::infeasible:
      return "infeasible";
  }
  return "unknown";
}

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const auto k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool separates_all(const SecuritySet& candidates, const std::vector<std::size_t>& chosen,
                   const std::vector<SeparatingPair>& pairs) {
  for (const auto& pair : pairs) {
    bool split = false;
    for (auto j : chosen) {
      if (separates(candidates, j, pair)) {
        split = true;
        break;
      }
    }
    if (!split) return false;
  }
  return true;
}

}  // namespace

Selection minimal_event_set_exact(const DesignInstance& instance, const SearchConfig& config) {
  instance.validate();
  const auto m = instance.candidates.security_count();
  const auto pairs = separating_pairs(instance.events, instance.states.size());
  Selection result;
  for (std::size_t k = 0; k <= m; ++k) {
    std::optional<std::vector<std::size_t>> undetermined;
    std::vector<std::size_t> chosen(k);
    for (std::size_t i = 0; i < k; ++i) chosen[i] = i;
    do {
      ++result.subsets_examined;
      if (!separates_all(instance.candidates, chosen, pairs)) continue;
      auto selected = instance.candidates.select(chosen);
      if (!distinguishes(selected, instance.events, instance.signals).all_distinguished()) continue;
      auto verdict = search_witness(selected, instance.signals, config);
      if (auto* cert = std::get_if<SeparableCertified>(&verdict)) {
        result.status = SelectionStatus::informative;
        result.chosen = chosen;
        result.certificate = cert->certificate.reason;
        return result;
      }
      if (std::holds_alternative<SeparabilityUnknown>(verdict) && !undetermined) undetermined = chosen;
    } while (next_combination(chosen, m));
    if (undetermined) {
      result.status = SelectionStatus::undetermined;
      result.chosen = *undetermined;
      return result;
    }
  }
  result.status = SelectionStatus::infeasible;
  return result;
}

Selection minimal_event_set_greedy(const DesignInstance& instance) {
  instance.validate();
  if (!instance.signals.join().is_discrete()) {
    throw PreconditionError("greedy selection needs a join of singletons");
  }
  const auto m = instance.candidates.security_count();
  auto pairs = separating_pairs(instance.events, instance.states.size());
  std::vector<bool> done(pairs.size(), false);
  std::size_t remaining = pairs.size();
  std::vector<bool> taken(m, false);
  Selection result;
  while (remaining > 0) {
    std::size_t best = m;
    std::size_t best_count = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (taken[j]) continue;
      std::size_t count = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!done[p] && separates(instance.candidates, j, pairs[p])) ++count;
      }
      if (count > best_count) {
        best = j;
        best_count = count;
      }
    }
    ++result.subsets_examined;
    if (best_count == 0) {
      result.status = SelectionStatus::infeasible;
      result.chosen.clear();
      return result;
    }
    taken[best] = true;
    result.chosen.push_back(best);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (!done[p] && separates(instance.candidates, best, pairs[p])) {
        done[p] = true;
        --remaining;
      }
    }
  }
  std::sort(result.chosen.begin(), result.chosen.end());
  auto cert = separability_certificate(instance.candidates.select(result.chosen), instance.signals);
  result.status = cert ? SelectionStatus::informative : SelectionStatus::undetermined;
  if (cert) result.certificate = cert->reason;
  return result;
}

DesignInstance reduce_set_cover(const SetCoverInstance& sc) {
  std::string fresh = "w0";
  for (int suffix = 1; std::find(sc.universe.begin(), sc.universe.end(), fresh) != sc.universe.end(); ++suffix) {
    fresh = "w0_" + std::to_string(suffix);
  }
  auto labels = sc.universe;
  labels.push_back(fresh);
  StateSpace states(labels);
  const auto n = states.size();
  const StateId outside = n - 1;

  std::set<std::string> seen;
  std::vector<std::string> names;
  std::vector<Vec> columns;
  for (const auto& [label, members] : sc.sets) {
    if (!seen.insert(label).second) throw InstanceError("duplicate set label '" + label + "'");
    Vec column(n, Rational(0));
    for (const auto& element : members) {
      auto s = states.index_of(element);
      if (s == outside) throw InstanceError("set '" + label + "' mentions an element outside the universe");
      column[s] = 1;
    }
    names.push_back(label);
    columns.push_back(std::move(column));
  }
  auto candidates = SecuritySet::from_columns(std::move(names), columns, n);
  std::vector<bool> not_outside(n, true);
  not_outside[outside] = false;
  DesignInstance instance{std::move(states), std::move(candidates), SignalStructure({Partition::discrete(n)}),
                          {Event(std::move(not_outside))}, sc};
  instance.validate();
  return instance;
}

}  // namespace infomarket
