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

#include "pguess/bibo.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

constexpr double kMinDenominator = 1e-12;
constexpr double kEndpointSlack = 1e-12;

// (1-alpha)(1-p) - beta p, the gap between the two column maxima.
double ColumnGap(const BiboParams& b) {
  return (1.0 - b.alpha()) * (1.0 - b.p()) - b.beta() * b.p();
}

absl::Status CheckNonDegenerate(const BiboParams& b) {
  if (ClassifyBranch(b) == BiboBranch::kDegenerate) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "degenerate parameters (p=%g, alpha=%g, beta=%g): (1-alpha)(1-p) <= "
        "beta p, so P_c(X|Y) = P_c(X) = p and no privacy trade-off exists",
        b.p(), b.alpha(), b.beta()));
  }
  return absl::OkStatus();
}

// Denominator of the crossover probability for the selected branch.
absl::StatusOr<double> BranchDenominator(const BiboParams& b,
                                         BiboBranch branch) {
  const double d = branch == BiboBranch::kZ
                       ? (1.0 - b.beta()) * b.p() - b.alpha() * (1.0 - b.p())
                       : ColumnGap(b);
  if (d < kMinDenominator) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "crossover denominator %g is too small for a well-posed filter", d));
  }
  return d;
}

}  // namespace

absl::StatusOr<BiboParams> BiboParams::Create(double p, double alpha,
                                              double beta) {
  if (!(p >= 0.5 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("p must lie in [1/2, 1), got %g", p));
  }
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("alpha must lie in [0, 1/2), got %g", alpha));
  }
  if (!(beta >= 0.0 && beta < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("beta must lie in [0, 1/2), got %g", beta));
  }
  return BiboParams(p, alpha, beta);
}

double BiboParams::pc_x_given_y() const {
  return std::max((1.0 - alpha_) * (1.0 - p_), beta_ * p_) +
         (1.0 - beta_) * p_;
}

std::string_view BiboBranchName(BiboBranch branch) {
  switch (branch) {
    case BiboBranch::kZ:
      return "Z_BRANCH";
    case BiboBranch::kReverseZ:
      return "REVERSE_Z_BRANCH";
    case BiboBranch::kDegenerate:
      return "DEGENERATE";
  }
  return "UNKNOWN";
}

BiboBranch ClassifyBranch(const BiboParams& b) {
  if (ColumnGap(b) <= 0.0) return BiboBranch::kDegenerate;
  const double pbar = 1.0 - b.p();
  const double lhs = b.alpha() * (1.0 - b.alpha()) * pbar * pbar;
  const double rhs = b.beta() * (1.0 - b.beta()) * b.p() * b.p();
  return lhs < rhs ? BiboBranch::kZ : BiboBranch::kReverseZ;
}

JointDistribution BiboJoint(const BiboParams& b) {
  const double pbar = 1.0 - b.p();
  Eigen::MatrixXd m(2, 2);
  m << (1.0 - b.alpha()) * pbar, b.alpha() * pbar,  //
      b.beta() * b.p(), (1.0 - b.beta()) * b.p();
  // Entries are products of probabilities, so the sum is 1 up to round-off.
  return JointDistribution::Create(std::move(m)).value();
}

absl::StatusOr<double> PerfectPrivacyUtility(const BiboParams& b) {
  PGUESS_RETURN_IF_ERROR(CheckNonDegenerate(b));
  const BiboBranch branch = ClassifyBranch(b);
  if (branch == BiboBranch::kReverseZ) return b.q();
  PGUESS_ASSIGN_OR_RETURN(double denom, BranchDenominator(b, branch));
  const double zeta = ColumnGap(b) / denom;
  return 1.0 - zeta * b.q();
}

absl::StatusOr<bool> HasNontrivialUtility(const BiboParams& b) {
  PGUESS_RETURN_IF_ERROR(CheckNonDegenerate(b));
  return ClassifyBranch(b) == BiboBranch::kZ && b.p() > 0.5 && b.p() < 1.0;
}

absl::StatusOr<BiboFrontierPoint> BiboGuessingFrontier(const BiboParams& b,
                                                       double eps) {
  PGUESS_RETURN_IF_ERROR(CheckNonDegenerate(b));
  const double top = b.pc_x_given_y();
  if (!(eps >= b.p() - kEndpointSlack && eps <= top + kEndpointSlack)) {
    return absl::OutOfRangeError(absl::StrFormat(
        "eps = %.12g outside [p, P_c(X|Y)] = [%.12g, %.12g]", eps, b.p(), top));
  }
  eps = std::clamp(eps, b.p(), top);
  const BiboBranch branch = ClassifyBranch(b);
  PGUESS_ASSIGN_OR_RETURN(double denom, BranchDenominator(b, branch));
  BiboFrontierPoint point;
  point.branch = branch;
  point.zeta = (top - eps) / denom;
  if (eps == b.p()) {
    PGUESS_ASSIGN_OR_RETURN(point.value, PerfectPrivacyUtility(b));
    return point;
  }
  point.value = branch == BiboBranch::kZ ? 1.0 - point.zeta * b.q()
                                         : 1.0 - point.zeta * (1.0 - b.q());
  return point;
}

absl::StatusOr<Channel> BiboOptimalFilter(const BiboParams& b, double eps) {
  PGUESS_ASSIGN_OR_RETURN(BiboFrontierPoint point, BiboGuessingFrontier(b, eps));
  const double z = point.zeta;
  if (point.branch == BiboBranch::kZ) {
    return Channel::FromRows({{1.0, 0.0}, {z, 1.0 - z}});
  }
  return Channel::FromRows({{1.0 - z, z}, {0.0, 1.0}});
}

}  // namespace pguess
