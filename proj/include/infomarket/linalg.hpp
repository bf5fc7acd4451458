#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infomarket/core.hpp"

namespace infomarket {

// Dense row-major rational matrix.
using Matrix = std::vector<Vec>;

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each non-zero row
};

Echelon row_reduce(Matrix a, std::size_t columns);
std::size_t rank(const Matrix& a, std::size_t columns);
Matrix transpose(const Matrix& a, std::size_t columns);

// Basis of {x : a x = 0}, one vector per free column, in column order.
std::vector<Vec> nullspace(const Matrix& a, std::size_t columns);

// Some solution of a x = b, or nullopt if the system is inconsistent.
std::optional<Vec> solve(const Matrix& a, std::size_t columns, const Vec& b);

// Payoff matrix M (|states| x |securities|) and M' (M with a ones column).
Matrix payoff_matrix(const SecuritySet& x);
Matrix augmented_payoff_matrix(const SecuritySet& x);

}  // namespace infomarket
