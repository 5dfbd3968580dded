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

// Privacy-aware guessing: the largest probability of guessing Y from a
// released Z = filter(Y) subject to the adversary's probability of guessing X
// from Z staying at or below a threshold eps.
//
// For a fixed guessing map g: Z -> Y the problem is a linear program in the
// filter entries F(y, z) plus one auxiliary t_z per output:
//
//   maximize   sum_z q_{g(z)} F(g(z), z)
//   subject to sum_z F(y, z) = 1                for every y
//              sum_y P(x, y) F(y, z) <= t_z     for every x, z
//              sum_z t_z <= eps
//
// and the optimum is the maximum over guessing maps. Outputs are
// interchangeable, so only non-decreasing maps (the lexicographically
// smallest member of each relabeling class) need to be solved.

#ifndef PGUESS_FILTER_SOLVER_H_
#define PGUESS_FILTER_SOLVER_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "pguess/distribution.h"
#include "pguess/entropy.h"

namespace pguess {

// Largest observable alphabet accepted with the default N + 1 outputs.
inline constexpr int kMaxObservableSize = 6;

struct FilterSolution {
  // P_c(Y|Z) and P_c(X|Z) recomputed from `filter`.
  double utility = 0.0;
  double privacy = 0.0;
  // Row-stochastic N x K filter P_Z|Y.
  Channel filter = Channel::Identity(1);
  // Guess of Y for each output z used by the winning program.
  std::vector<int> y_guess_map;
  // Threshold actually enforced (the request raised to P_c(X) if it was
  // below by less than kProbabilityTolerance).
  double threshold = 0.0;
  // True when eps >= P_c(X|Y) and the identity filter was returned.
  bool saturated = false;
};

struct GuessingSolverOptions {
  // Output alphabet size K; 0 selects N + 1, which always suffices.
  int num_outputs = 0;
  // Upper bound on the number of linear programs (one per guessing-map
  // class) a single call may solve.
  int max_programs = 20000;
};

// Fails with InvalidArgument when eps < P_c(X) - kProbabilityTolerance,
// ResourceExhausted when the alphabet is too large, and Internal on a
// numerical failure of the LP solver.
absl::StatusOr<FilterSolution> SolvePrivacyAwareGuessing(
    const JointDistribution& joint, double eps,
    const GuessingSolverOptions& options = {});

// Guessing rate-privacy function in bits:
//   log2( h(min(2^eps_bits P_c(X), P_c(X|Y))) / P_c(Y) ).
absl::StatusOr<double> GuessingRatePrivacy(const JointDistribution& joint,
                                           double eps_bits);

// Bounds on the utility-privacy function of finite orders (nu, mu) in terms
// of the guessing rate-privacy function. The lower bound only holds when
// eps_bits >= H_nu(X) - H_inf(X); otherwise it is absent.
struct OrderBounds {
  double upper = 0.0;
  std::optional<double> lower;
  // Arguments passed to the rate-privacy function.
  double upper_argument = 0.0;
  std::optional<double> lower_argument;
};

absl::StatusOr<OrderBounds> BoundOrderUtilityPrivacy(
    const JointDistribution& joint, Order nu, Order mu, double eps_bits);

}  // namespace pguess

#endif  // PGUESS_FILTER_SOLVER_H_
