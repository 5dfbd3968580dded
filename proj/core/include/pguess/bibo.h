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

// Closed-form privacy-aware guessing for binary X ~ Bernoulli(p) observed
// through a binary-input binary-output channel with P(Y=1|X=0) = alpha and
// P(Y=0|X=1) = beta.
//
// With q = P(Y=1) = alpha (1-p) + (1-beta) p the guessing function is affine
// on [p, P_c(X|Y)] and is achieved by a Z-channel (Y=1 flipped to 0) when
// alpha (1-alpha) (1-p)^2 < beta (1-beta) p^2, and by a reverse Z-channel
// (Y=0 flipped to 1) otherwise.

#ifndef PGUESS_BIBO_H_
#define PGUESS_BIBO_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "pguess/distribution.h"

namespace pguess {

class BiboParams {
 public:
  // Requires p in [1/2, 1) and alpha, beta in [0, 1/2).
  static absl::StatusOr<BiboParams> Create(double p, double alpha,
                                           double beta);

  double p() const { return p_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  // P(Y = 1).
  double q() const { return alpha_ * (1.0 - p_) + (1.0 - beta_) * p_; }
  // max{(1-alpha)(1-p), beta p} + (1-beta) p.
  double pc_x_given_y() const;

 private:
  BiboParams(double p, double alpha, double beta)
      : p_(p), alpha_(alpha), beta_(beta) {}

  double p_, alpha_, beta_;
};

enum class BiboBranch { kZ, kReverseZ, kDegenerate };

std::string_view BiboBranchName(BiboBranch branch);

// kDegenerate iff (1-alpha)(1-p) <= beta p, in which case
// P_c(X|Y) = P_c(X) = p. Otherwise kZ iff
// alpha (1-alpha) (1-p)^2 < beta (1-beta) p^2; equality goes to kReverseZ.
BiboBranch ClassifyBranch(const BiboParams& params);

// [[(1-alpha)(1-p), alpha (1-p)], [beta p, (1-beta) p]].
JointDistribution BiboJoint(const BiboParams& params);

// h(p): utility at perfect privacy, 1 - zeta q on the Z branch and q on the
// reverse branch. FailedPrecondition for degenerate parameters.
absl::StatusOr<double> PerfectPrivacyUtility(const BiboParams& params);

// Whether perfect privacy still improves on blind guessing of Y:
// Z branch and p in (1/2, 1).
absl::StatusOr<bool> HasNontrivialUtility(const BiboParams& params);

struct BiboFrontierPoint {
  double value = 0.0;
  BiboBranch branch = BiboBranch::kZ;
  // Crossover probability of the optimal (reverse) Z-channel.
  double zeta = 0.0;
};

// h(eps) for eps in [p, P_c(X|Y)].
absl::StatusOr<BiboFrontierPoint> BiboGuessingFrontier(const BiboParams& params,
                                                       double eps);

// Optimal filter at eps. Z branch: [[1, 0], [zeta, 1 - zeta]]; reverse
// branch: [[1 - zeta, zeta], [0, 1]]. When p = 1/2 and alpha = beta the
// symmetric filter BSC(zeta / 2) is optimal as well; only the reverse Z-channel
// is returned.
absl::StatusOr<Channel> BiboOptimalFilter(const BiboParams& params, double eps);

}  // namespace pguess

#endif  // PGUESS_BIBO_H_
