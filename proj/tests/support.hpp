#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance suites.
// The oracles deliberately avoid the library's own elimination and simplex
// code so that they can check it.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "infomarket/certify.hpp"
#include "infomarket/core.hpp"
#include "infomarket/design.hpp"
#include "infomarket/dynamics.hpp"
#include "infomarket/scoring.hpp"

namespace fixture {

using namespace infomarket;

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline Vec vec(std::initializer_list<Rational> xs) { return Vec(xs); }

inline Event event(std::size_t n, std::initializer_list<StateId> members) {
  std::vector<StateId> m(members);
  return Event(n, m);
}

inline Partition partition(std::size_t n, std::vector<std::vector<StateId>> cells) {
  return Partition(n, std::move(cells));
}

struct Market {
  StateSpace states;
  Distribution prior;
  SignalStructure signals;
  SecuritySet securities;
  Event event;  // event of interest
};

// Election market: w1..w4 = (win, Iowa-yes), (win, no), (lose, no), (lose, yes)
// in the ordering used by the scenario files. The analyst's cells are
// {w1,w4},{w2,w3}; the caucus-goer's are {w1,w3},{w2,w4}.
inline Market election(bool with_iowa) {
  const std::size_t n = 4;
  SignalStructure signals({partition(n, {{0, 3}, {1, 2}}), partition(n, {{0, 2}, {1, 3}})});
  Event election = event(n, {0, 1});
  SecuritySet x = SecuritySet::event_security("election", election);
  if (with_iowa) x = x.append(SecuritySet::event_security("iowa", event(n, {0, 2})));
  return Market{StateSpace({"w1", "w2", "w3", "w4"}), Distribution::uniform(n), signals, x, election};
}

// Six-state market with securities x* = 1{w2,w5} and x' = 1{w1,w4}.
inline Market six_state(bool star, bool prime) {
  const std::size_t n = 6;
  SignalStructure signals({partition(n, {{0, 1, 2}, {3, 4, 5}}), partition(n, {{0, 4}, {2, 3}, {1, 5}})});
  SecuritySet x = SecuritySet::empty(n);
  if (star) x = x.append(SecuritySet::event_security("xstar", event(n, {1, 4})));
  if (prime) x = x.append(SecuritySet::event_security("xprime", event(n, {0, 3})));
  return Market{StateSpace({"w1p", "w2s", "w3", "w4p", "w5s", "w6"}), Distribution::uniform(n), signals, x,
                event(n, {1, 4})};
}

inline std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < n; ++s) out.push_back("s" + std::to_string(s));
  return out;
}

// ---------------------------------------------------------------- sampling

inline Rational random_rational(std::mt19937_64& rng, long range, long max_den) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  return q(num(rng), den(rng));
}

inline Distribution full_support_prior(std::mt19937_64& rng, std::size_t n, long max_weight = 20) {
  std::uniform_int_distribution<long> w(1, max_weight);
  Vec mass(n);
  Rational total = 0;
  for (auto& m : mass) {
    m = w(rng);
    total += m;
  }
  for (auto& m : mass) m /= total;
  return Distribution(std::move(mass));
}

inline SecuritySet random_securities(std::mt19937_64& rng, std::size_t n, std::size_t m, long range = 3,
                                     long max_den = 2) {
  std::vector<Vec> cols(m, Vec(n));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) {
    names.push_back("x" + std::to_string(j));
    for (auto& v : cols[j]) v = random_rational(rng, range, max_den);
  }
  return SecuritySet::from_columns(names, cols, n);
}

inline SecuritySet random_event_securities(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Vec> cols(m, Vec(n));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) {
    names.push_back("c" + std::to_string(j));
    for (auto& v : cols[j]) v = coin(rng) ? 1 : 0;
  }
  return SecuritySet::from_columns(names, cols, n);
}

inline Partition random_partition(std::mt19937_64& rng, std::size_t n, std::size_t max_cells) {
  std::uniform_int_distribution<std::size_t> pick(0, max_cells - 1);
  std::vector<std::vector<StateId>> cells(max_cells);
  for (StateId s = 0; s < n; ++s) cells[pick(rng)].push_back(s);
  std::erase_if(cells, [](const auto& c) { return c.empty(); });
  return Partition(n, std::move(cells));
}

inline SignalStructure random_signals(std::mt19937_64& rng, std::size_t n, std::size_t traders) {
  std::vector<Partition> parts;
  for (std::size_t i = 0; i < traders; ++i) parts.push_back(random_partition(rng, n, std::max<std::size_t>(1, n / 2 + 1)));
  return SignalStructure(std::move(parts));
}

// Each state gets a distinct coordinate tuple; trader i sees coordinate i, so
// the join is always discrete.
inline SignalStructure random_singleton_join(std::mt19937_64& rng, std::size_t n, std::size_t traders) {
  std::vector<std::size_t> radix(traders, 1);
  std::uniform_int_distribution<std::size_t> grow(0, traders - 1);
  auto volume = [&] { return std::accumulate(radix.begin(), radix.end(), std::size_t{1}, std::multiplies<>()); };
  while (volume() < n) ++radix[grow(rng)];
  std::vector<std::size_t> codes(volume());
  std::iota(codes.begin(), codes.end(), 0);
  std::shuffle(codes.begin(), codes.end(), rng);
  std::vector<Partition> parts;
  for (std::size_t i = 0; i < traders; ++i) {
    std::size_t div = 1;
    for (std::size_t k = 0; k < i; ++k) div *= radix[k];
    std::vector<std::vector<StateId>> cells(radix[i]);
    for (StateId s = 0; s < n; ++s) cells[(codes[s] / div) % radix[i]].push_back(s);
    std::erase_if(cells, [](const auto& c) { return c.empty(); });
    parts.emplace_back(n, std::move(cells));
  }
  return SignalStructure(std::move(parts));
}

inline Event random_proper_event(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  while (true) {
    std::vector<bool> mask(n);
    for (std::size_t s = 0; s < n; ++s) mask[s] = coin(rng);
    Event e(mask);
    if (!e.empty() && e.size() < n) return e;
  }
}

}  // namespace fixture

namespace oracle {

using namespace infomarket;

// Gauss-Jordan on a copy; returns a non-zero vector of the right kernel of
// `a` (rows x cols) or nullopt when the kernel is trivial.
inline std::optional<Vec> kernel_vector(std::vector<Vec> a, std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    Vec x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -a[r][free];
    return x;
  }
  return std::nullopt;
}

inline std::size_t matrix_rank(std::vector<Vec> a, std::size_t cols) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = row + 1; r < a.size(); ++r) {
      Rational f = a[r][c] / a[row][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    ++row;
  }
  return row;
}

// Unique solution of a square system, or nullopt when singular.
inline std::optional<Vec> solve_square(std::vector<Vec> a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

// max c.x s.t. a x = b, x >= 0 by enumerating every basic solution. Only
// meaningful when the feasible region is bounded.
inline std::optional<Rational> lp_by_vertices(const std::vector<Vec>& a, const Vec& b, const Vec& c) {
  const std::size_t cols = c.size();
  const std::size_t r = matrix_rank(a, cols);
  // keep a maximal independent set of rows
  std::vector<Vec> rows;
  Vec rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto trial = rows;
    trial.push_back(a[i]);
    if (matrix_rank(trial, cols) > rows.size()) {
      rows = std::move(trial);
      rhs.push_back(b[i]);
    }
  }
  // the full system must be consistent with the kept rows
  {
    auto aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    if (matrix_rank(aug, cols + 1) != r) return std::nullopt;
  }
  std::optional<Rational> best;
  std::vector<bool> pick(cols, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<std::size_t> basis;
    for (std::size_t k = 0; k < cols; ++k)
      if (pick[k]) basis.push_back(k);
    std::vector<Vec> sq(r, Vec(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) sq[i][k] = rows[i][basis[k]];
    auto xb = solve_square(sq, rhs);
    if (!xb) continue;
    if (std::any_of(xb->begin(), xb->end(), [](const Rational& v) { return v < 0; })) continue;
    Rational value = 0;
    for (std::size_t k = 0; k < r; ++k) value += c[basis[k]] * (*xb)[k];
    if (!best || value > *best) best = value;
  } while (std::next_permutation(pick.begin(), pick.end()));
  if (r == 0) return Rational(0);
  return best;
}

// Largest P(E) - P'(E) with P, P' supported on the given state lists and equal
// security expectations, by vertex enumeration.
inline Rational pair_gap(const SecuritySet& x, const Event& e, const std::vector<StateId>& first,
                         const std::vector<StateId>& second) {
  const std::size_t a = first.size(), vars = a + second.size(), m = x.security_count();
  std::vector<Vec> rows(2 + m, Vec(vars, Rational(0)));
  Vec rhs(2 + m, Rational(0));
  rhs[0] = rhs[1] = 1;
  Vec obj(vars, Rational(0));
  for (std::size_t k = 0; k < a; ++k) {
    rows[0][k] = 1;
    for (std::size_t j = 0; j < m; ++j) rows[2 + j][k] = x.at(first[k], j);
    obj[k] = e.contains(first[k]) ? 1 : 0;
  }
  for (std::size_t k = 0; k < second.size(); ++k) {
    rows[1][a + k] = 1;
    for (std::size_t j = 0; j < m; ++j) rows[2 + j][a + k] = -x.at(second[k], j);
    obj[a + k] = e.contains(second[k]) ? -1 : 0;
  }
  auto best = lp_by_vertices(rows, rhs, obj);
  return best.value_or(Rational(0));
}

inline bool distinguishes_by_vertices(const SecuritySet& x, const Event& e, const Partition& join) {
  for (const auto& j1 : join.cells())
    for (const auto& j2 : join.cells())
      if (pair_gap(x, e, j1, j2) != 0) return false;
  return true;
}

// Discrete join: only point masses are admissible, so E is distinguished iff
// states with equal payoff rows agree on E.
inline bool distinguishes_by_point_masses(const SecuritySet& x, const Event& e) {
  for (StateId s = 0; s < x.state_count(); ++s)
    for (StateId t = s + 1; t < x.state_count(); ++t)
      if (x.payoff(s) == x.payoff(t) && e.contains(s) != e.contains(t)) return false;
  return true;
}

// Join by definition: two states share a join cell iff every partition puts
// them together.
inline bool same_join_cell(const std::vector<Partition>& parts, StateId s, StateId t) {
  for (const auto& p : parts)
    if (p.cell_index(s) != p.cell_index(t)) return false;
  return true;
}

inline std::vector<std::size_t> bits(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < 32; ++k)
    if (mask >> k & 1u) out.push_back(k);
  return out;
}

// Smallest number of sets whose union is the universe; nullopt if none.
inline std::optional<std::size_t> min_cover(std::size_t universe, const std::vector<std::vector<std::size_t>>& sets) {
  std::optional<std::size_t> best;
  for (std::uint32_t mask = 0; mask < (1u << sets.size()); ++mask) {
    std::vector<bool> hit(universe, false);
    for (auto k : bits(mask))
      for (auto u : sets[k]) hit[u] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      std::size_t size = bits(mask).size();
      if (!best || size < *best) best = size;
    }
  }
  return best;
}

// Smallest candidate subset (by oracle distinguishability on a discrete
// join) covering every event.
inline std::optional<std::size_t> min_distinguishing_subset(const SecuritySet& candidates,
                                                            const std::vector<Event>& events) {
  std::optional<std::size_t> best;
  for (std::uint32_t mask = 0; mask < (1u << candidates.security_count()); ++mask) {
    auto cols = bits(mask);
    if (best && cols.size() >= *best) continue;
    auto x = candidates.select(cols);
    bool ok = std::all_of(events.begin(), events.end(),
                          [&](const Event& e) { return distinguishes_by_point_masses(x, e); });
    if (ok) best = cols.size();
  }
  return best;
}

inline double harmonic(std::size_t n) {
  double h = 0;
  for (std::size_t k = 1; k <= n; ++k) h += 1.0 / static_cast<double>(k);
  return h;
}

}  // namespace oracle
