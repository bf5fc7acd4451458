#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace infomarket {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator. Every probability, payoff and score in the library uses it.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

// Accepts "p", "p/q" and "-p/q" with decimal integers. Throws
// std::invalid_argument on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

std::vector<std::string> to_strings(const Vec& values);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace infomarket
