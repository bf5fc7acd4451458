#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infomarket/errors.hpp"
#include "infomarket/rational.hpp"

namespace infomarket {

using StateId = std::size_t;

// Ordered, non-empty set of uniquely labelled states. The declaration order
// fixes every matrix layout and every tie-break in the library.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(StateId s) const { return labels_.at(s); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<StateId> find(std::string_view label) const;
  // Throws InstanceError for unknown labels.
  StateId index_of(std::string_view label) const;

  bool operator==(const StateSpace& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, StateId, std::less<>> index_;
};

// Subset of a state space of known size.
class Event {
 public:
  Event() = default;
  Event(std::size_t universe, std::span<const StateId> members);
  explicit Event(std::vector<bool> mask) : mask_(std::move(mask)) {}

  static Event all(std::size_t universe) { return Event(std::vector<bool>(universe, true)); }
  static Event none(std::size_t universe) { return Event(std::vector<bool>(universe, false)); }

  std::size_t universe_size() const { return mask_.size(); }
  bool contains(StateId s) const { return s < mask_.size() && mask_[s]; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<StateId> members() const;

  Event complement() const;
  Event intersect(const Event& other) const;
  bool is_subset_of(const Event& other) const;

  const std::vector<bool>& mask() const { return mask_; }
  bool operator==(const Event& other) const = default;

 private:
  std::vector<bool> mask_;
};

// Probability mass function over a state space. Masses are non-negative and
// sum to exactly one.
class Distribution {
 public:
  explicit Distribution(Vec mass);

  static Distribution uniform(std::size_t universe);
  static Distribution uniform_on(const Event& support);
  static Distribution point(std::size_t universe, StateId s);

  std::size_t size() const { return mass_.size(); }
  const Rational& operator[](StateId s) const { return mass_.at(s); }
  const Vec& mass() const { return mass_; }

  Event support() const;
  Rational probability(const Event& e) const;

  bool operator==(const Distribution& other) const { return mass_ == other.mass_; }

 private:
  Vec mass_;
};

// Partition of {0, ..., n-1}. Stored canonically: every cell sorted, cells
// ordered by their smallest member.
class Partition {
 public:
  Partition(std::size_t universe, std::vector<std::vector<StateId>> cells);

  static Partition discrete(std::size_t universe);
  static Partition trivial(std::size_t universe);

  std::size_t universe_size() const { return cell_index_.size(); }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<std::vector<StateId>>& cells() const { return cells_; }

  std::size_t cell_index(StateId s) const { return cell_index_.at(s); }
  const std::vector<StateId>& cell_of(StateId s) const { return cells_[cell_index(s)]; }
  Event cell_event(std::size_t cell) const;

  // True when every cell of *this lies inside one cell of `coarser`.
  bool refines(const Partition& coarser) const;
  bool is_discrete() const { return cells_.size() == cell_index_.size(); }

  bool operator==(const Partition& other) const { return cells_ == other.cells_; }

 private:
  std::vector<std::vector<StateId>> cells_;
  std::vector<std::size_t> cell_index_;
};

// Coarsest common refinement. Throws InstanceError on an empty sequence or
// partitions over different universes.
Partition join(std::span<const Partition> partitions);

// One partition per trader together with their join.
class SignalStructure {
 public:
  explicit SignalStructure(std::vector<Partition> partitions);

  std::size_t trader_count() const { return partitions_.size(); }
  std::size_t universe_size() const { return join_.universe_size(); }
  const std::vector<Partition>& partitions() const { return partitions_; }
  const Partition& partition(std::size_t trader) const { return partitions_.at(trader); }
  const Partition& join() const { return join_; }

  bool operator==(const SignalStructure& other) const { return partitions_ == other.partitions_; }

 private:
  std::vector<Partition> partitions_;
  Partition join_;
};

// Payoff matrix: one row per state, one column per security.
class SecuritySet {
 public:
  SecuritySet(std::vector<std::string> names, std::vector<Vec> rows);

  static SecuritySet from_columns(std::vector<std::string> names, const std::vector<Vec>& columns,
                                  std::size_t universe);
  static SecuritySet event_security(std::string name, const Event& e);
  // Zero securities over `universe` states; the empty selection.
  static SecuritySet empty(std::size_t universe);

  std::size_t state_count() const { return rows_.size(); }
  std::size_t security_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t j) const { return names_.at(j); }
  const Vec& payoff(StateId s) const { return rows_.at(s); }
  const Rational& at(StateId s, std::size_t j) const { return rows_.at(s).at(j); }
  const std::vector<Vec>& rows() const { return rows_; }
  Vec column(std::size_t j) const;

  SecuritySet select(std::span<const std::size_t> columns) const;
  SecuritySet append(const SecuritySet& more) const;
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const SecuritySet& other) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Vec> rows_;
};

// Distribution / consensus-vector pair refuting separability.
struct Witness {
  Distribution distribution;
  Vec consensus;
};

Distribution condition(const Distribution& p, const Event& s);
Vec expectation(const Distribution& p, const SecuritySet& x);
Vec conditional_expectation(const Distribution& p, const SecuritySet& x, const Event& s);

// Conditional expectation over an explicit member list; returns nullopt when
// the members carry zero mass. Used on hot paths that already hold a cell.
std::optional<Vec> conditional_expectation(const Distribution& p, const SecuritySet& x,
                                           std::span<const StateId> members);

}  // namespace infomarket
