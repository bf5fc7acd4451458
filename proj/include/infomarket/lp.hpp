#pragma once

#include "infomarket/linalg.hpp"

namespace infomarket::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rational value;  // optimal objective when status == optimal
  Vec x;           // optimal vertex when status == optimal
};

// maximize c.x subject to a x = b, x >= 0, solved exactly with a two-phase
// tableau simplex. Bland's rule picks entering and leaving variables, so the
// method never cycles.
Result maximize(const Matrix& a, const Vec& b, const Vec& c);

}  // namespace infomarket::lp
