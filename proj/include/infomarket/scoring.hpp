#pragma once

#include <cstddef>
#include <vector>

#include "infomarket/core.hpp"

namespace infomarket {

struct Trace;

// Quadratic (Brier) scoring rule s(y, x) = -b * |y - x|^2, b > 0.
class BrierRule {
 public:
  explicit BrierRule(Rational b = 1);

  const Rational& b() const { return b_; }
  Rational score(const Vec& report, const Vec& realization) const;

  bool operator==(const BrierRule& other) const { return b_ == other.b_; }

 private:
  Rational b_;
};

Rational brier_score(const Vec& report, const Vec& realization, const BrierRule& rule);

// Sum over states of P(w) * score(report, X(w)).
Rational expected_score(const Distribution& p, const Vec& report, const SecuritySet& x,
                        const BrierRule& rule);

// Market-scoring-rule settlement of a finished trace.
struct PaymentLedger {
  std::vector<Rational> scores;         // score of prediction t, t = 0..T
  std::vector<Rational> step_payments;  // score(t) - score(t-1), t = 1..T
  std::vector<Rational> trader_net;     // per trader, sum of own step payments

  Rational total() const;
};

// Throws InstanceError when the trace lacks its initial prediction.
PaymentLedger settle(const Trace& trace, StateId true_state, const SecuritySet& x,
                     const BrierRule& rule);

}  // namespace infomarket
