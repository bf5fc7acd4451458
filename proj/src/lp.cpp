#include "infomarket/lp.hpp"

#include <optional>

namespace infomarket::lp {
namespace {

// Tableau rows hold [coefficients | rhs]; the objective row holds reduced
// costs of the maximization (entering columns have positive entries) and the
// negated objective value in the rhs slot.
class Tableau {
 public:
  Tableau(Matrix rows, std::vector<std::size_t> basis, std::size_t vars)
      : rows_(std::move(rows)), basis_(std::move(basis)), vars_(vars) {}

  void set_objective(const Vec& cost) {
    objective_.assign(vars_ + 1, Rational(0));
    for (std::size_t j = 0; j < vars_; ++j) objective_[j] = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= vars_; ++j) objective_[j] -= cb * rows_[r][j];
    }
  }

  // Runs simplex iterations over the allowed columns; false if unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < vars_; ++j) {
        if (allowed[j] && sgn(objective_[j]) > 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto& coef = rows_[r][*entering];
        if (sgn(coef) <= 0) continue;
        Rational ratio = rows_[r][vars_] / coef;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rational lead = rows_[row][col];
    for (auto& v : rows_[row]) v /= lead;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == row || sgn(rows_[r][col]) == 0) continue;
      Rational f = rows_[r][col];
      for (std::size_t j = 0; j <= vars_; ++j) rows_[r][j] -= f * rows_[row][j];
    }
    if (sgn(objective_[col]) != 0) {
      Rational f = objective_[col];
      for (std::size_t j = 0; j <= vars_; ++j) objective_[j] -= f * rows_[row][j];
    }
    basis_[row] = col;
  }

  Rational value() const { return -objective_[vars_]; }
  Matrix& rows() { return rows_; }
  std::vector<std::size_t>& basis() { return basis_; }

  Vec solution(std::size_t count) const {
    Vec x(count, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < count) x[basis_[r]] = rows_[r][vars_];
    }
    return x;
  }

 private:
  Matrix rows_;
  std::vector<std::size_t> basis_;
  std::size_t vars_;
  Vec objective_;
};

}  // namespace

Result maximize(const Matrix& a, const Vec& b, const Vec& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw InstanceError("lp: rhs length differs from row count");
  for (const auto& row : a) {
    if (row.size() != n) throw InstanceError("lp: row length differs from variable count");
  }

  // Phase one: artificial variable per row, rhs made non-negative.
  const std::size_t vars = n + m;
  Matrix rows(m, Vec(vars + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = sgn(b[r]) < 0;
    for (std::size_t j = 0; j < n; ++j) rows[r][j] = flip ? Rational(-a[r][j]) : a[r][j];
    rows[r][n + r] = 1;
    rows[r][vars] = flip ? Rational(-b[r]) : b[r];
    basis[r] = n + r;
  }
  Tableau t(std::move(rows), std::move(basis), vars);
  Vec phase_one(vars, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase_one[n + r] = -1;
  t.set_objective(phase_one);
  t.optimize(std::vector<bool>(vars, true));
  if (sgn(t.value()) != 0) return Result{Status::infeasible, 0, {}};

  // Drive remaining artificials out of the basis; rows with no structural
  // entry are redundant and dropped.
  for (std::size_t r = 0; r < t.rows().size();) {
    if (t.basis()[r] < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(t.rows()[r][j]) != 0) {
        col = j;
        break;
      }
    }
    if (col) {
      t.pivot(r, *col);
      ++r;
    } else {
      t.rows().erase(t.rows().begin() + static_cast<std::ptrdiff_t>(r));
      t.basis().erase(t.basis().begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  Vec phase_two(vars, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase_two[j] = c[j];
  t.set_objective(phase_two);
  std::vector<bool> allowed(vars, false);
  for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
  if (!t.optimize(allowed)) return Result{Status::unbounded, 0, {}};
  return Result{Status::optimal, t.value(), t.solution(n)};
}

}  // namespace infomarket::lp
