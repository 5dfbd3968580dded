// Copyright 2026 The pguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pguess/simplex.h"

#include <cmath>
#include <functional>

#include "Eigen/Core"
#include "absl/strings/str_format.h"

namespace pguess {
namespace {

constexpr double kFlushTolerance = 1e-14;
constexpr double kRatioTieTolerance = 1e-12;

// Tableau with one row per constraint plus a trailing objective row holding
// reduced costs; the last column is the right-hand side (objective row:
// minus the current objective value).
class Tableau {
 public:
  Tableau(const LinearProgram& program, const SimplexOptions& options)
      : options_(options),
        num_vars_(program.num_variables()),
        num_slacks_(static_cast<int>(program.inequalities.size())),
        num_rows_(static_cast<int>(program.equalities.size() +
                                   program.inequalities.size())),
        rhs_col_(num_vars_ + num_slacks_ + num_rows_),
        table_(Eigen::MatrixXd::Zero(num_rows_ + 1, rhs_col_ + 1)),
        basis_(num_rows_),
        row_sign_(num_rows_, 1.0) {
    int row = 0;
    auto fill = [&](const LinearConstraint& c, int slack) {
      for (int j = 0; j < num_vars_; ++j) table_(row, j) = c.coefficients[j];
      if (slack >= 0) table_(row, num_vars_ + slack) = 1.0;
      table_(row, rhs_col_) = c.rhs;
      if (c.rhs < 0.0) {
        table_.row(row) *= -1.0;
        row_sign_[row] = -1.0;
      }
      table_(row, ArtificialColumn(row)) = 1.0;
      basis_[row] = ArtificialColumn(row);
      ++row;
    };
    for (const LinearConstraint& c : program.equalities) fill(c, -1);
    for (int k = 0; k < num_slacks_; ++k) fill(program.inequalities[k], k);
  }

  int ArtificialColumn(int row) const { return num_vars_ + num_slacks_ + row; }
  bool IsArtificial(int col) const { return col >= num_vars_ + num_slacks_; }
  int pivots() const { return pivots_; }

  // Maximize -(sum of artificials). Returns the phase-one optimum (<= 0).
  absl::StatusOr<double> PhaseOne() {
    for (int j = 0; j < rhs_col_; ++j) {
      table_(num_rows_, j) = IsArtificial(j) ? 0.0 : table_.col(j).head(num_rows_).sum();
    }
    table_(num_rows_, rhs_col_) = table_.col(rhs_col_).head(num_rows_).sum();
    absl::StatusOr<bool> bounded = Run();
    if (!bounded.ok()) return bounded.status();
    return -table_(num_rows_, rhs_col_);
  }

  // Pivots zero-level artificials out of the basis where possible. Rows
  // that cannot be pivoted are linearly dependent and keep their artificial
  // basic at zero.
  void DriveOutArtificials() {
    for (int i = 0; i < num_rows_; ++i) {
      if (!IsArtificial(basis_[i])) continue;
      for (int j = 0; j < num_vars_ + num_slacks_; ++j) {
        if (std::abs(table_(i, j)) > options_.pivot_tolerance) {
          Pivot(i, j);
          break;
        }
      }
    }
  }

  // Returns false if the program is unbounded.
  absl::StatusOr<bool> PhaseTwo(const std::vector<double>& objective) {
    for (int j = 0; j <= rhs_col_; ++j) {
      double d = (j < num_vars_) ? objective[j] : 0.0;
      if (j == rhs_col_) d = 0.0;
      for (int i = 0; i < num_rows_; ++i) {
        const int b = basis_[i];
        if (b < num_vars_) d -= objective[b] * table_(i, j);
      }
      table_(num_rows_, j) = d;
    }
    return Run();
  }

  std::vector<double> Point() const {
    std::vector<double> x(num_vars_, 0.0);
    for (int i = 0; i < num_rows_; ++i) {
      if (basis_[i] < num_vars_) x[basis_[i]] = std::max(0.0, table_(i, rhs_col_));
    }
    return x;
  }

  // Dual multiplier of original constraint `row`.
  double Dual(int row) const {
    return -row_sign_[row] * table_(num_rows_, ArtificialColumn(row));
  }

 private:
  // Bland's rule iterations over non-artificial entering columns. Returns
  // true at optimality, false when unbounded.
  absl::StatusOr<bool> Run() {
    const int budget = options_.max_pivots > 0
                           ? options_.max_pivots
                           : 50 * (num_rows_ + rhs_col_) + 1000;
    while (true) {
      int entering = -1;
      for (int j = 0; j < num_vars_ + num_slacks_; ++j) {
        if (table_(num_rows_, j) > options_.pivot_tolerance) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < num_rows_; ++i) {
        const double a = table_(i, entering);
        if (a <= options_.pivot_tolerance) continue;
        const double ratio = table_(i, rhs_col_) / a;
        if (leaving < 0 || ratio < best_ratio - kRatioTieTolerance ||
            (std::abs(ratio - best_ratio) <= kRatioTieTolerance &&
             basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      if (pivots_ >= budget) {
        return absl::InternalError(absl::StrFormat(
            "simplex pivot budget of %d exhausted", budget));
      }
      Pivot(leaving, entering);
    }
  }

  void Pivot(int row, int col) {
    ++pivots_;
    table_.row(row) /= table_(row, col);
    for (int i = 0; i <= num_rows_; ++i) {
      if (i == row) continue;
      const double factor = table_(i, col);
      if (factor != 0.0) table_.row(i) -= factor * table_.row(row);
    }
    table_ = (table_.array().abs() < kFlushTolerance).select(0.0, table_);
    table_(row, col) = 1.0;
    basis_[row] = col;
  }

  SimplexOptions options_;
  int num_vars_;
  int num_slacks_;
  int num_rows_;
  int rhs_col_;
  Eigen::MatrixXd table_;
  std::vector<int> basis_;
  std::vector<double> row_sign_;
  int pivots_ = 0;
};

absl::Status Validate(const LinearProgram& program) {
  const size_t n = program.objective.size();
  if (n == 0) return absl::InvalidArgumentError("program has no variables");
  for (double c : program.objective) {
    if (!std::isfinite(c)) {
      return absl::InvalidArgumentError("objective has a non-finite entry");
    }
  }
  auto check = [n](const std::vector<LinearConstraint>& rows,
                   absl::string_view kind) -> absl::Status {
    for (size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].coefficients.size() != n) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s constraint %d has %d coefficients, expected %d", kind, k,
            rows[k].coefficients.size(), n));
      }
      if (!std::isfinite(rows[k].rhs)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s constraint %d has a non-finite rhs", kind, k));
      }
      for (double a : rows[k].coefficients) {
        if (!std::isfinite(a)) {
          return absl::InvalidArgumentError(absl::StrFormat(
              "%s constraint %d has a non-finite coefficient", kind, k));
        }
      }
    }
    return absl::OkStatus();
  };
  if (absl::Status s = check(program.equalities, "equality"); !s.ok()) return s;
  return check(program.inequalities, "inequality");
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "OPTIMAL";
    case LpStatus::kInfeasible:
      return "INFEASIBLE";
    case LpStatus::kUnbounded:
      return "UNBOUNDED";
  }
  return "UNKNOWN";
}

absl::StatusOr<LpSolution> SolveLp(const LinearProgram& program,
                                   const SimplexOptions& options) {
  if (absl::Status s = Validate(program); !s.ok()) return s;

  Tableau tableau(program, options);
  LpSolution solution;

  absl::StatusOr<double> phase_one = tableau.PhaseOne();
  if (!phase_one.ok()) return phase_one.status();
  double scale = 1.0;
  for (const auto& c : program.equalities) scale += std::abs(c.rhs);
  for (const auto& c : program.inequalities) scale += std::abs(c.rhs);
  if (*phase_one < -options.feasibility_tolerance * scale) {
    solution.status = LpStatus::kInfeasible;
    solution.pivots = tableau.pivots();
    return solution;
  }
  tableau.DriveOutArtificials();

  absl::StatusOr<bool> bounded = tableau.PhaseTwo(program.objective);
  if (!bounded.ok()) return bounded.status();
  solution.pivots = tableau.pivots();
  if (!*bounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.point = tableau.Point();
  solution.value = Dot(program.objective, solution.point);
  const int num_eq = static_cast<int>(program.equalities.size());
  for (int k = 0; k < num_eq; ++k) {
    solution.equality_duals.push_back(tableau.Dual(k));
  }
  for (size_t k = 0; k < program.inequalities.size(); ++k) {
    solution.inequality_duals.push_back(tableau.Dual(num_eq + k));
  }
  return solution;
}

absl::Status CheckOptimalityCertificate(const LinearProgram& program,
                                        const LpSolution& solution,
                                        double tolerance) {
  if (solution.status != LpStatus::kOptimal) {
    return absl::FailedPreconditionError("solution is not optimal");
  }
  const int n = program.num_variables();
  if (static_cast<int>(solution.point.size()) != n ||
      solution.equality_duals.size() != program.equalities.size() ||
      solution.inequality_duals.size() != program.inequalities.size()) {
    return absl::InvalidArgumentError("solution shape does not match program");
  }
  for (int j = 0; j < n; ++j) {
    if (solution.point[j] < -tolerance) {
      return absl::InternalError(
          absl::StrFormat("variable %d = %g is negative", j, solution.point[j]));
    }
  }
  for (size_t k = 0; k < program.equalities.size(); ++k) {
    const auto& c = program.equalities[k];
    const double r = Dot(c.coefficients, solution.point) - c.rhs;
    if (std::abs(r) > tolerance) {
      return absl::InternalError(
          absl::StrFormat("equality %d residual %g", k, r));
    }
  }
  for (size_t k = 0; k < program.inequalities.size(); ++k) {
    const auto& c = program.inequalities[k];
    const double r = Dot(c.coefficients, solution.point) - c.rhs;
    if (r > tolerance) {
      return absl::InternalError(
          absl::StrFormat("inequality %d violated by %g", k, r));
    }
    if (solution.inequality_duals[k] < -tolerance) {
      return absl::InternalError(absl::StrFormat(
          "inequality dual %d = %g is negative", k, solution.inequality_duals[k]));
    }
  }
  // Reduced costs c_j - A_j^T y must be <= 0 (no improving direction).
  double dual_value = 0.0;
  std::vector<double> column_sum(n, 0.0);
  for (size_t k = 0; k < program.equalities.size(); ++k) {
    const double y = solution.equality_duals[k];
    dual_value += y * program.equalities[k].rhs;
    for (int j = 0; j < n; ++j) column_sum[j] += y * program.equalities[k].coefficients[j];
  }
  for (size_t k = 0; k < program.inequalities.size(); ++k) {
    const double y = solution.inequality_duals[k];
    dual_value += y * program.inequalities[k].rhs;
    for (int j = 0; j < n; ++j) column_sum[j] += y * program.inequalities[k].coefficients[j];
  }
  for (int j = 0; j < n; ++j) {
    const double reduced = program.objective[j] - column_sum[j];
    if (reduced > tolerance) {
      return absl::InternalError(
          absl::StrFormat("variable %d has improving reduced cost %g", j, reduced));
    }
  }
  if (std::abs(dual_value - solution.value) > tolerance) {
    return absl::InternalError(absl::StrFormat(
        "duality gap %g (primal %g, dual %g)", dual_value - solution.value,
        solution.value, dual_value));
  }
  return absl::OkStatus();
}

}  // namespace pguess
