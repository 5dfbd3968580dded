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

// Dense two-phase primal simplex for small linear programs of the form
//
//   maximize    c . x
//   subject to  A_eq x  = b_eq
//               A_in x <= b_in
//               x >= 0
//
// Pivoting follows Bland's rule, so the solver is deterministic and cannot
// cycle. It is meant for programs with a few dozen variables.

#ifndef PGUESS_SIMPLEX_H_
#define PGUESS_SIMPLEX_H_

#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace pguess {

struct LinearConstraint {
  std::vector<double> coefficients;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;  // coefficients . x <= rhs

  int num_variables() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> point;
  // Dual multipliers, one per constraint, in the order given. Inequality
  // duals are nonnegative at optimality. Only filled for kOptimal.
  std::vector<double> equality_duals;
  std::vector<double> inequality_duals;
  int pivots = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  // Phase-one residual above which the program is declared infeasible,
  // relative to max(1, |b|_1).
  double feasibility_tolerance = 1e-9;
  // Zero means 50 * (rows + columns) + 1000.
  int max_pivots = 0;
};

// Fails with InvalidArgument on malformed input and with Internal when the
// pivot budget is exhausted; never reports a wrong kOptimal in that case.
absl::StatusOr<LpSolution> SolveLp(const LinearProgram& program,
                                   const SimplexOptions& options = {});

// Verifies an optimal solution: primal feasibility, dual feasibility and a
// zero duality gap, each within `tolerance`.
absl::Status CheckOptimalityCertificate(const LinearProgram& program,
                                        const LpSolution& solution,
                                        double tolerance = 1e-8);

}  // namespace pguess

#endif  // PGUESS_SIMPLEX_H_
