#include "infomarket/core.hpp"

#include <algorithm>
#include <numeric>

namespace infomarket {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InstanceError("state space must be non-empty");
  for (StateId s = 0; s < labels_.size(); ++s) {
    if (!index_.emplace(labels_[s], s).second) {
      throw InstanceError("duplicate state label '" + labels_[s] + "'");
    }
  }
}

std::optional<StateId> StateSpace::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateId StateSpace::index_of(std::string_view label) const {
  if (auto s = find(label)) return *s;
  throw InstanceError("unknown state label '" + std::string(label) + "'");
}

// --- Event -----------------------------------------------------------------

Event::Event(std::size_t universe, std::span<const StateId> members) : mask_(universe, false) {
  for (StateId s : members) {
    if (s >= universe) throw InstanceError("event member outside the state space");
    mask_[s] = true;
  }
}

std::size_t Event::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<StateId> Event::members() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < mask_.size(); ++s) {
    if (mask_[s]) out.push_back(s);
  }
  return out;
}

Event Event::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !mask_[i];
  return Event(std::move(m));
}

Event Event::intersect(const Event& other) const {
  if (other.universe_size() != universe_size()) throw InstanceError("event universes differ");
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] && other.mask_[i];
  return Event(std::move(m));
}

bool Event::is_subset_of(const Event& other) const {
  if (other.universe_size() != universe_size()) return false;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && !other.mask_[i]) return false;
  }
  return true;
}

// --- Distribution ----------------------------------------------------------

Distribution::Distribution(Vec mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw InstanceError("distribution over an empty state space");
  Rational total = 0;
  for (const auto& m : mass_) {
    if (sgn(m) < 0) throw InstanceError("negative probability mass " + to_string(m));
    total += m;
  }
  if (total != 1) throw InstanceError("probability masses sum to " + to_string(total) + ", not 1");
}

Distribution Distribution::uniform(std::size_t universe) {
  return uniform_on(Event::all(universe));
}

Distribution Distribution::uniform_on(const Event& support) {
  auto k = support.size();
  if (k == 0) throw InstanceError("uniform distribution over an empty support");
  Vec mass(support.universe_size(), Rational(0));
  Rational share(1, static_cast<unsigned long>(k));
  for (StateId s : support.members()) mass[s] = share;
  return Distribution(std::move(mass));
}

Distribution Distribution::point(std::size_t universe, StateId s) {
  Vec mass(universe, Rational(0));
  mass.at(s) = 1;
  return Distribution(std::move(mass));
}

Event Distribution::support() const {
  std::vector<bool> m(mass_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = sgn(mass_[i]) > 0;
  return Event(std::move(m));
}

Rational Distribution::probability(const Event& e) const {
  if (e.universe_size() != size()) throw InstanceError("event and distribution universes differ");
  Rational total = 0;
  for (StateId s = 0; s < size(); ++s) {
    if (e.contains(s)) total += mass_[s];
  }
  return total;
}

// --- Partition -------------------------------------------------------------

Partition::Partition(std::size_t universe, std::vector<std::vector<StateId>> cells)
    : cells_(std::move(cells)), cell_index_(universe, universe) {
  if (universe == 0) throw InstanceError("partition of an empty state space");
  for (auto& cell : cells_) {
    if (cell.empty()) throw InstanceError("partition has an empty cell");
    std::sort(cell.begin(), cell.end());
  }
  std::sort(cells_.begin(), cells_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (StateId s : cells_[c]) {
      if (s >= universe) throw InstanceError("partition cell mentions a state outside the space");
      if (cell_index_[s] != universe) throw InstanceError("partition cells overlap");
      cell_index_[s] = c;
    }
  }
  for (std::size_t idx : cell_index_) {
    if (idx == universe) throw InstanceError("partition cells do not cover the state space");
  }
}

Partition Partition::discrete(std::size_t universe) {
  std::vector<std::vector<StateId>> cells(universe);
  for (StateId s = 0; s < universe; ++s) cells[s] = {s};
  return Partition(universe, std::move(cells));
}

Partition Partition::trivial(std::size_t universe) {
  std::vector<StateId> all(universe);
  std::iota(all.begin(), all.end(), StateId{0});
  return Partition(universe, {std::move(all)});
}

Event Partition::cell_event(std::size_t cell) const {
  return Event(universe_size(), cells_.at(cell));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.universe_size() != universe_size()) return false;
  for (const auto& cell : cells_) {
    auto target = coarser.cell_index(cell.front());
    for (StateId s : cell) {
      if (coarser.cell_index(s) != target) return false;
    }
  }
  return true;
}

Partition join(std::span<const Partition> partitions) {
  if (partitions.empty()) throw InstanceError("join of an empty sequence of partitions");
  const auto n = partitions.front().universe_size();
  for (const auto& p : partitions) {
    if (p.universe_size() != n) throw InstanceError("partitions are over different state spaces");
  }
  // Two states share a join cell iff their signature of cell indices agrees.
  std::map<std::vector<std::size_t>, std::vector<StateId>> groups;
  for (StateId s = 0; s < n; ++s) {
    std::vector<std::size_t> signature;
    signature.reserve(partitions.size());
    for (const auto& p : partitions) signature.push_back(p.cell_index(s));
    groups[std::move(signature)].push_back(s);
  }
  std::vector<std::vector<StateId>> cells;
  cells.reserve(groups.size());
  for (auto& [_, cell] : groups) cells.push_back(std::move(cell));
  return Partition(n, std::move(cells));
}

SignalStructure::SignalStructure(std::vector<Partition> partitions)
    : partitions_(std::move(partitions)), join_(infomarket::join(partitions_)) {}

// --- SecuritySet -----------------------------------------------------------

SecuritySet::SecuritySet(std::vector<std::string> names, std::vector<Vec> rows)
    : names_(std::move(names)), rows_(std::move(rows)) {
  if (rows_.empty()) throw InstanceError("security set over an empty state space");
  for (const auto& row : rows_) {
    if (row.size() != names_.size()) throw InstanceError("payoff row length differs from security count");
  }
}

SecuritySet SecuritySet::from_columns(std::vector<std::string> names, const std::vector<Vec>& columns,
                                      std::size_t universe) {
  if (columns.size() != names.size()) throw InstanceError("security names and columns differ in count");
  std::vector<Vec> rows(universe, Vec(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != universe) throw InstanceError("payoff column length differs from state count");
    for (StateId s = 0; s < universe; ++s) rows[s][j] = columns[j][s];
  }
  return SecuritySet(std::move(names), std::move(rows));
}

SecuritySet SecuritySet::event_security(std::string name, const Event& e) {
  Vec column(e.universe_size());
  for (StateId s = 0; s < column.size(); ++s) column[s] = e.contains(s) ? 1 : 0;
  return from_columns({std::move(name)}, {column}, e.universe_size());
}

SecuritySet SecuritySet::empty(std::size_t universe) {
  return SecuritySet({}, std::vector<Vec>(universe));
}

Vec SecuritySet::column(std::size_t j) const {
  Vec out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.at(j));
  return out;
}

SecuritySet SecuritySet::select(std::span<const std::size_t> columns) const {
  std::vector<std::string> names;
  for (auto j : columns) names.push_back(names_.at(j));
  std::vector<Vec> rows(rows_.size());
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    for (auto j : columns) rows[s].push_back(rows_[s][j]);
  }
  return SecuritySet(std::move(names), std::move(rows));
}

SecuritySet SecuritySet::append(const SecuritySet& more) const {
  if (more.state_count() != state_count()) throw InstanceError("security sets over different state spaces");
  auto names = names_;
  names.insert(names.end(), more.names_.begin(), more.names_.end());
  auto rows = rows_;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    rows[s].insert(rows[s].end(), more.rows_[s].begin(), more.rows_[s].end());
  }
  return SecuritySet(std::move(names), std::move(rows));
}

std::optional<std::size_t> SecuritySet::find(std::string_view name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  return std::nullopt;
}

// --- expectations ----------------------------------------------------------

Distribution condition(const Distribution& p, const Event& s) {
  auto mass = p.probability(s);
  if (sgn(mass) == 0) throw NullConditioningError("conditioning on an event of probability zero");
  Vec out(p.size(), Rational(0));
  for (StateId w = 0; w < p.size(); ++w) {
    if (s.contains(w)) out[w] = p[w] / mass;
  }
  return Distribution(std::move(out));
}

Vec expectation(const Distribution& p, const SecuritySet& x) {
  if (x.state_count() != p.size()) throw InstanceError("distribution and securities over different state spaces");
  Vec out(x.security_count(), Rational(0));
  for (StateId w = 0; w < p.size(); ++w) {
    if (sgn(p[w]) == 0) continue;
    const auto& row = x.payoff(w);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += p[w] * row[j];
  }
  return out;
}

Vec conditional_expectation(const Distribution& p, const SecuritySet& x, const Event& s) {
  if (x.state_count() != p.size() || s.universe_size() != p.size()) {
    throw InstanceError("distribution, securities and event over different state spaces");
  }
  auto members = s.members();
  auto result = conditional_expectation(p, x, members);
  if (!result) throw NullConditioningError("conditioning on an event of probability zero");
  return *std::move(result);
}

std::optional<Vec> conditional_expectation(const Distribution& p, const SecuritySet& x,
                                           std::span<const StateId> members) {
  Rational mass = 0;
  Vec sum(x.security_count(), Rational(0));
  for (StateId w : members) {
    const auto& pw = p[w];
    if (sgn(pw) == 0) continue;
    mass += pw;
    const auto& row = x.payoff(w);
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += pw * row[j];
  }
  if (sgn(mass) == 0) return std::nullopt;
  for (auto& v : sum) v /= mass;
  return sum;
}

}  // namespace infomarket
