#include "infomarket/linalg.hpp"

#include <utility>

namespace infomarket {

Echelon row_reduce(Matrix a, std::size_t columns) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    Rational lead = a[row][col];
    for (auto& v : a[row]) v /= lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t c = col; c < columns; ++c) a[r][c] -= factor * a[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const Matrix& a, std::size_t columns) {
  return row_reduce(a, columns).pivots.size();
}

Matrix transpose(const Matrix& a, std::size_t columns) {
  Matrix t(columns, Vec(a.size()));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < columns; ++c) t[c][r] = a[r][c];
  }
  return t;
}

std::vector<Vec> nullspace(const Matrix& a, std::size_t columns) {
  auto ech = row_reduce(a, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vec v(columns, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, std::size_t columns, const Vec& b) {
  Matrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b.at(r));
  auto ech = row_reduce(std::move(aug), columns + 1);
  if (!ech.pivots.empty() && ech.pivots.back() == columns) return std::nullopt;
  Vec x(columns, Rational(0));
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced[r][columns];
  return x;
}

Matrix payoff_matrix(const SecuritySet& x) { return x.rows(); }

Matrix augmented_payoff_matrix(const SecuritySet& x) {
  Matrix m = x.rows();
  for (auto& row : m) row.emplace_back(1);
  return m;
}

}  // namespace infomarket
