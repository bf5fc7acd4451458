#include <doctest.h>

#include "support.hpp"

using namespace infomarket;
using fixture::event;
using fixture::partition;
using fixture::q;

TEST_SUITE("core") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-2/4") == q(-1, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(q(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  }

  TEST_CASE("state space labels") {
    StateSpace s({"a", "b"});
    CHECK(s.index_of("b") == 1);
    CHECK_FALSE(s.find("z"));
    CHECK_THROWS_AS(s.index_of("z"), InstanceError);
    CHECK_THROWS_AS(StateSpace({"a", "a"}), InstanceError);
    CHECK_THROWS_AS(StateSpace(std::vector<std::string>{}), InstanceError);
  }

  TEST_CASE("distribution invariants") {
    CHECK_THROWS_AS(Distribution({q(1, 3), q(1, 3), q(1, 4), 0}), InstanceError);
    CHECK_NOTHROW(Distribution({q(1, 3), q(1, 3), q(1, 3), 0}));
    CHECK_THROWS_AS(Distribution({q(3, 2), q(-1, 2)}), InstanceError);
    Distribution p({q(1, 2), q(1, 4), q(1, 4), 0});
    CHECK(p.support() == event(4, {0, 1, 2}));
    CHECK(p.probability(event(4, {1, 3})) == q(1, 4));
  }

  TEST_CASE("partitions are canonical and validated") {
    Partition p(4, {{3, 1}, {2, 0}});
    CHECK(p.cells() == std::vector<std::vector<StateId>>{{0, 2}, {1, 3}});
    CHECK(p.cell_index(3) == 1);
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), InstanceError);
    CHECK_THROWS_AS(Partition(3, {{0, 1}}), InstanceError);
    CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), InstanceError);
  }

  TEST_CASE("join examples") {
    // A, B, C, D
    std::vector<Partition> ab{partition(4, {{0, 3}, {1, 2}}), partition(4, {{0, 2, 3}, {1}})};
    CHECK(join(ab) == partition(4, {{0, 3}, {1}, {2}}));

    std::vector<Partition> one{partition(3, {{0, 2}, {1}})};
    CHECK(join(one) == one[0]);

    auto m = fixture::election(false);
    CHECK(m.signals.join() == Partition::discrete(4));

    std::vector<Partition> none;
    CHECK_THROWS_AS(join(none), InstanceError);
    std::vector<Partition> mismatched{Partition::trivial(2), Partition::trivial(3)};
    CHECK_THROWS_AS(join(mismatched), InstanceError);
  }

  TEST_CASE("join matches pairwise definition and is idempotent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t n = 1 + rng() % 8;
      auto signals = fixture::random_signals(rng, n, 1 + rng() % 3);
      const auto& j = signals.join();
      for (StateId s = 0; s < n; ++s)
        for (StateId t = 0; t < n; ++t)
          CHECK((j.cell_index(s) == j.cell_index(t)) == oracle::same_join_cell(signals.partitions(), s, t));
      for (const auto& p : signals.partitions()) CHECK(j.refines(p));
      auto more = signals.partitions();
      more.push_back(j);
      CHECK(join(more) == j);
    }
  }

  TEST_CASE("conditioning") {
    auto u = Distribution::uniform(4);
    CHECK(condition(u, event(4, {0, 2})) == Distribution({q(1, 2), 0, q(1, 2), 0}));
    Distribution p({q(1, 2), q(1, 4), q(1, 4), 0});
    CHECK(condition(p, Event::all(4)) == p);
    CHECK(condition(p, event(4, {1, 2, 3})) == Distribution({0, q(1, 2), q(1, 2), 0}));
    CHECK_THROWS_AS(condition(p, event(4, {3})), NullConditioningError);
  }

  TEST_CASE("expectations") {
    auto m = fixture::election(false);
    CHECK(expectation(Distribution::point(4, 2), m.securities) == m.securities.payoff(2));
    CHECK(expectation(m.prior, m.securities) == fixture::vec({q(1, 2)}));

    auto pair = fixture::election(true);
    Distribution p({q(1, 3), q(1, 3), q(1, 3), 0});
    CHECK(expectation(p, pair.securities) == fixture::vec({q(2, 3), q(2, 3)}));

    CHECK(conditional_expectation(m.prior, m.securities, event(4, {0, 2})) == fixture::vec({q(1, 2)}));
    CHECK(conditional_expectation(m.prior, m.securities, event(4, {3})) == m.securities.payoff(3));

    auto six = fixture::six_state(true, false);
    auto w = Distribution::uniform_on(event(6, {0, 1, 4, 5}));
    CHECK(conditional_expectation(w, six.securities, event(6, {0, 1, 2})) == fixture::vec({q(1, 2)}));
    CHECK_THROWS_AS(conditional_expectation(w, six.securities, event(6, {2, 3})), NullConditioningError);
  }

  TEST_CASE("law of total expectation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t n = 1 + rng() % 7;
      auto x = fixture::random_securities(rng, n, 1 + rng() % 3);
      auto p = sample_prior(n, static_cast<std::size_t>(trial), rng, 20);
      auto c = fixture::random_partition(rng, n, 3);
      Vec total(x.security_count(), Rational(0));
      for (std::size_t k = 0; k < c.cell_count(); ++k) {
        auto cell = c.cell_event(k);
        Rational mass = p.probability(cell);
        if (mass == 0) continue;
        auto ce = conditional_expectation(p, x, cell);
        for (std::size_t j = 0; j < ce.size(); ++j) total[j] += mass * ce[j];
      }
      CHECK(total == expectation(p, x));
    }
  }

  TEST_CASE("security set helpers") {
    auto x = SecuritySet::from_columns({"a", "b"}, {fixture::vec({1, 2, 3}), fixture::vec({0, 1, 0})}, 3);
    CHECK(x.at(2, 0) == 3);
    CHECK(x.column(1) == fixture::vec({0, 1, 0}));
    std::vector<std::size_t> cols{1};
    CHECK(x.select(cols).names() == std::vector<std::string>{"b"});
    CHECK(x.find("b") == 1u);
    CHECK_FALSE(x.find("c"));
    CHECK(SecuritySet::empty(3).security_count() == 0);
    CHECK_THROWS_AS(SecuritySet({"a"}, {fixture::vec({1, 2})}), InstanceError);
  }
}
