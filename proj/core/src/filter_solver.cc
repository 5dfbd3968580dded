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

#include "pguess/filter_solver.h"

#include <algorithm>
#include <string>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/simplex.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

// Number of non-decreasing maps from `length` slots into `values` symbols,
// i.e. C(values + length - 1, length), saturated at `cap` + 1.
long long CountSortedMaps(int values, int length, long long cap) {
  long long count = 1;
  for (int i = 1; i <= length; ++i) {
    count = count * (values + i - 1) / i;
    if (count > cap) return cap + 1;
  }
  return count;
}

// Advances `map` to the next non-decreasing sequence over [0, values) in
// lexicographic order. Returns false after the last one.
bool NextSortedMap(std::vector<int>& map, int values) {
  int i = static_cast<int>(map.size()) - 1;
  while (i >= 0 && map[i] == values - 1) --i;
  if (i < 0) return false;
  ++map[i];
  for (size_t j = i + 1; j < map.size(); ++j) map[j] = map[i];
  return true;
}

// Constraint set shared by every guessing map.
LinearProgram BuildFeasibleSet(const JointDistribution& joint, int outputs,
                               double eps) {
  const int m = joint.rows();
  const int n = joint.cols();
  const int num_vars = n * outputs + outputs;
  auto f_index = [outputs](int y, int z) { return y * outputs + z; };
  auto t_index = [n, outputs](int z) { return n * outputs + z; };

  LinearProgram program;
  program.objective.assign(num_vars, 0.0);
  for (int y = 0; y < n; ++y) {
    LinearConstraint row{std::vector<double>(num_vars, 0.0), 1.0};
    for (int z = 0; z < outputs; ++z) row.coefficients[f_index(y, z)] = 1.0;
    program.equalities.push_back(std::move(row));
  }
  for (int z = 0; z < outputs; ++z) {
    for (int x = 0; x < m; ++x) {
      LinearConstraint row{std::vector<double>(num_vars, 0.0), 0.0};
      for (int y = 0; y < n; ++y) row.coefficients[f_index(y, z)] = joint(x, y);
      row.coefficients[t_index(z)] = -1.0;
      program.inequalities.push_back(std::move(row));
    }
  }
  LinearConstraint budget{std::vector<double>(num_vars, 0.0), eps};
  for (int z = 0; z < outputs; ++z) budget.coefficients[t_index(z)] = 1.0;
  program.inequalities.push_back(std::move(budget));
  return program;
}

absl::StatusOr<Channel> FilterFromPoint(const std::vector<double>& point,
                                        int inputs, int outputs) {
  Eigen::MatrixXd f(inputs, outputs);
  for (int y = 0; y < inputs; ++y) {
    for (int z = 0; z < outputs; ++z) {
      f(y, z) = std::max(0.0, point[y * outputs + z]);
    }
    // Absorb LP round-off (~1e-12) so the row is exactly stochastic.
    f.row(y) /= f.row(y).sum();
  }
  return Channel::Create(std::move(f));
}

}  // namespace

absl::StatusOr<FilterSolution> SolvePrivacyAwareGuessing(
    const JointDistribution& joint, double eps,
    const GuessingSolverOptions& options) {
  const int n = joint.cols();
  const int outputs = options.num_outputs > 0 ? options.num_outputs : n + 1;
  if (options.num_outputs == 0 && n > kMaxObservableSize) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "observable alphabet of size %d exceeds the supported maximum of %d",
        n, kMaxObservableSize));
  }
  if (!std::isfinite(eps)) {
    return absl::InvalidArgumentError("privacy threshold must be finite");
  }
  const double pc_x = GuessProb(joint, Axis::kRows);
  const double pc_x_given_y = CondGuessProb(joint, Axis::kRows);
  if (eps < pc_x - kProbabilityTolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "privacy threshold %.12g is below P_c(X) = %.12g; no filter "
        "satisfies it",
        eps, pc_x));
  }
  const double threshold = std::max(eps, pc_x);

  if (threshold >= pc_x_given_y && outputs >= n) {
    FilterSolution solution;
    solution.filter = Channel::Identity(n, outputs - n);
    solution.utility = 1.0;
    solution.privacy = pc_x_given_y;
    solution.threshold = threshold;
    solution.saturated = true;
    solution.y_guess_map.resize(outputs, 0);
    for (int z = 0; z < n; ++z) solution.y_guess_map[z] = z;
    return solution;
  }

  const long long programs =
      CountSortedMaps(n, outputs, options.max_programs);
  if (programs > options.max_programs) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "%d x %d filters need more than %d linear programs", n, outputs,
        options.max_programs));
  }

  const Eigen::VectorXd q = joint.Marginal(Axis::kCols);
  LinearProgram program = BuildFeasibleSet(joint, outputs, threshold);
  std::vector<int> map(outputs, 0);
  std::vector<int> best_map;
  LpSolution best;
  bool have_best = false;
  do {
    std::fill(program.objective.begin(), program.objective.end(), 0.0);
    for (int z = 0; z < outputs; ++z) {
      program.objective[map[z] * outputs + z] = q(map[z]);
    }
    PGUESS_ASSIGN_OR_RETURN(LpSolution lp, SolveLp(program));
    if (lp.status != LpStatus::kOptimal) {
      return absl::InternalError(absl::StrFormat(
          "guessing-map program returned %s",
          std::string(LpStatusName(lp.status))));
    }
    // Strict improvement keeps the lexicographically smallest map on ties.
    if (!have_best || lp.value > best.value + 1e-12) {
      best = std::move(lp);
      best_map = map;
      have_best = true;
    }
  } while (NextSortedMap(map, n));

  PGUESS_ASSIGN_OR_RETURN(Channel filter,
                          FilterFromPoint(best.point, n, outputs));
  PGUESS_ASSIGN_OR_RETURN(FilterPerformance perf,
                          EvaluateFilter(joint, filter));
  if (perf.privacy > threshold + 1e-8) {
    return absl::InternalError(absl::StrFormat(
        "optimal filter leaks P_c(X|Z) = %.15g above threshold %.15g",
        perf.privacy, threshold));
  }
  FilterSolution solution;
  solution.utility = perf.utility;
  solution.privacy = perf.privacy;
  solution.filter = std::move(filter);
  solution.y_guess_map = std::move(best_map);
  solution.threshold = threshold;
  return solution;
}

absl::StatusOr<double> GuessingRatePrivacy(const JointDistribution& joint,
                                           double eps_bits) {
  if (!(eps_bits >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("leakage budget must be >= 0 bits, got %g", eps_bits));
  }
  const double pc_x = GuessProb(joint, Axis::kRows);
  const double pc_x_given_y = CondGuessProb(joint, Axis::kRows);
  const double threshold = std::min(std::exp2(eps_bits) * pc_x, pc_x_given_y);
  PGUESS_ASSIGN_OR_RETURN(FilterSolution solution,
                          SolvePrivacyAwareGuessing(joint, threshold));
  return std::log2(solution.utility / GuessProb(joint, Axis::kCols));
}

absl::StatusOr<OrderBounds> BoundOrderUtilityPrivacy(
    const JointDistribution& joint, Order nu, Order mu, double eps_bits) {
  if (!nu.is_finite() || !mu.is_finite()) {
    return absl::InvalidArgumentError(
        "order bounds need finite orders nu, mu > 1");
  }
  if (!(eps_bits >= 0.0)) {
    return absl::InvalidArgumentError("leakage budget must be >= 0 bits");
  }
  const double h_nu_x = MarginalRenyiEntropy(joint, Axis::kRows, nu);
  const double h_inf_x =
      MarginalRenyiEntropy(joint, Axis::kRows, Order::Infinity());
  const double h_mu_y = MarginalRenyiEntropy(joint, Axis::kCols, mu);
  const double h_inf_y =
      MarginalRenyiEntropy(joint, Axis::kCols, Order::Infinity());
  const double v = nu.value();
  const double u = mu.value();

  OrderBounds bounds;
  bounds.upper_argument = (v - 1.0) / v * eps_bits + h_inf_x / v;
  PGUESS_ASSIGN_OR_RETURN(double g_upper,
                          GuessingRatePrivacy(joint, bounds.upper_argument));
  bounds.upper = g_upper + h_mu_y - h_inf_y;

  const double lower_argument = eps_bits - h_nu_x + h_inf_x;
  if (lower_argument >= 0.0) {
    PGUESS_ASSIGN_OR_RETURN(double g_lower,
                            GuessingRatePrivacy(joint, lower_argument));
    bounds.lower_argument = lower_argument;
    bounds.lower = u / (u - 1.0) * g_lower - h_inf_y / (u - 1.0);
  }
  return bounds;
}

}  // namespace pguess
