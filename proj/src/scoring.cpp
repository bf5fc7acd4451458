#include "infomarket/scoring.hpp"

#include "infomarket/dynamics.hpp"

namespace infomarket {

BrierRule::BrierRule(Rational b) : b_(std::move(b)) {
  if (sgn(b_) <= 0) throw InstanceError("Brier scaling constant must be positive, got " + to_string(b_));
}

Rational BrierRule::score(const Vec& report, const Vec& realization) const {
  if (report.size() != realization.size()) throw InstanceError("report and realization lengths differ");
  Rational sq = 0;
  for (std::size_t j = 0; j < report.size(); ++j) {
    Rational d = report[j] - realization[j];
    sq += d * d;
  }
  return -b_ * sq;
}

Rational brier_score(const Vec& report, const Vec& realization, const BrierRule& rule) {
  return rule.score(report, realization);
}

Rational expected_score(const Distribution& p, const Vec& report, const SecuritySet& x,
                        const BrierRule& rule) {
  if (x.state_count() != p.size()) throw InstanceError("distribution and securities over different state spaces");
  if (report.size() != x.security_count()) throw InstanceError("report length differs from security count");
  Rational total = 0;
  for (StateId w = 0; w < p.size(); ++w) {
    if (sgn(p[w]) == 0) continue;
    total += p[w] * rule.score(report, x.payoff(w));
  }
  return total;
}

Rational PaymentLedger::total() const {
  Rational t = 0;
  for (const auto& v : trader_net) t += v;
  return t;
}

PaymentLedger settle(const Trace& trace, StateId true_state, const SecuritySet& x,
                     const BrierRule& rule) {
  if (trace.initial_prediction.size() != x.security_count()) {
    throw InstanceError("trace has no initial prediction matching the securities");
  }
  const auto& realization = x.payoff(true_state);
  PaymentLedger ledger;
  ledger.trader_net.assign(trace.trader_count, Rational(0));
  ledger.scores.push_back(rule.score(trace.initial_prediction, realization));
  for (const auto& a : trace.announcements) {
    auto s = rule.score(a.prediction, realization);
    Rational step = s - ledger.scores.back();
    ledger.trader_net.at(a.trader) += step;
    ledger.step_payments.push_back(std::move(step));
    ledger.scores.push_back(std::move(s));
  }
  return ledger;
}

}  // namespace infomarket
