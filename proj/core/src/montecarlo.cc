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

#include "pguess/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

// Rounding slack for "exact" agreement of a degenerate frequency with a sum of
// joint probabilities.
constexpr double kExactSlack = 1e-12;

// Cumulative sums of `values`, with the final entry pinned to 1 so that every
// uniform draw in [0, 1) lands on some index.
std::vector<double> Cumulative(const Eigen::Ref<const Eigen::VectorXd>& values) {
  std::vector<double> cdf(values.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    acc += values[i];
    cdf[i] = acc;
  }
  // Trailing zero-probability entries must never be drawn.
  Eigen::Index last = values.size() - 1;
  while (last > 0 && values[last] <= 0.0) --last;
  for (Eigen::Index i = last; i < values.size(); ++i) cdf[i] = 1.0;
  return cdf;
}

int Draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                   cdf.size() - 1));
}

// 53-bit uniform in [0, 1).
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double BinomialStdError(double f, int64_t samples) {
  return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
}

}  // namespace

absl::StatusOr<JointScenario> Materialize(const VectorScenario& scenario) {
  const VectorModel& m = scenario.model;
  if (!(scenario.gamma >= 0.0 && scenario.gamma <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "filter gamma=%g must lie in [0, 1]", scenario.gamma));
  }
  PGUESS_ASSIGN_OR_RETURN(JointDistribution joint, ProductJoint(m));
  if (scenario.kind == VectorFilterKind::kBlockZn) {
    PGUESS_ASSIGN_OR_RETURN(Channel filter,
                            ZnChannel(m.n(), scenario.gamma).Expand());
    return JointScenario{std::move(joint), std::move(filter)};
  }
  PGUESS_ASSIGN_OR_RETURN(
      const Channel z,
      Channel::FromRows({{1.0, 0.0}, {scenario.gamma, 1.0 - scenario.gamma}}));
  PGUESS_ASSIGN_OR_RETURN(Channel filter, MemorylessFilter(m.n(), z));
  return JointScenario{std::move(joint), std::move(filter)};
}

namespace {

absl::StatusOr<JointScenario> Resolve(const SimConfig& config) {
  if (const auto* joint = std::get_if<JointScenario>(&config.model)) {
    return *joint;
  }
  return Materialize(std::get<VectorScenario>(config.model));
}

}  // namespace

absl::StatusOr<SimReport> Simulate(const SimConfig& config) {
  if (config.samples < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("samples=%d must be >= 1", config.samples));
  }
  PGUESS_ASSIGN_OR_RETURN(const JointScenario scenario, Resolve(config));
  const JointDistribution& joint = scenario.joint;
  const Channel& filter = scenario.filter;
  if (filter.inputs() != joint.cols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "filter has %d inputs but Y takes %d values", filter.inputs(),
        joint.cols()));
  }

  PGUESS_ASSIGN_OR_RETURN(const JointDistribution pxz,
                          Compose(joint, filter, Axis::kCols));
  const Eigen::VectorXd py = joint.Marginal(Axis::kCols);
  PGUESS_ASSIGN_OR_RETURN(
      const JointDistribution y_self,
      JointDistribution::Diagonal(std::span<const double>(py.data(), py.size())));
  PGUESS_ASSIGN_OR_RETURN(const JointDistribution pyz,
                          Compose(y_self, filter, Axis::kCols));
  const std::vector<int> guess_x = MapGuesser(pxz, Axis::kRows);
  const std::vector<int> guess_y = MapGuesser(pyz, Axis::kRows);

  // Row-major flattening of P_XY.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      row_major = joint.matrix();
  const std::vector<double> joint_cdf = Cumulative(
      Eigen::Map<const Eigen::VectorXd>(row_major.data(), row_major.size()));
  std::vector<std::vector<double>> filter_cdf;
  filter_cdf.reserve(filter.inputs());
  for (int y = 0; y < filter.inputs(); ++y) {
    filter_cdf.push_back(Cumulative(filter.matrix().row(y).transpose()));
  }

  std::mt19937_64 rng(config.seed);
  int64_t hits_x = 0, hits_y = 0;
  const int cols = joint.cols();
  for (int64_t i = 0; i < config.samples; ++i) {
    const int cell = Draw(joint_cdf, Uniform(rng));
    const int x = cell / cols, y = cell % cols;
    const int z = Draw(filter_cdf[y], Uniform(rng));
    hits_x += guess_x[z] == x;
    hits_y += guess_y[z] == y;
  }

  SimReport report;
  report.samples = config.samples;
  report.seed = config.seed;
  report.empirical_pc_x = static_cast<double>(hits_x) / config.samples;
  report.empirical_pc_y = static_cast<double>(hits_y) / config.samples;
  report.analytic_pc_x = CondGuessProb(pxz, Axis::kRows);
  report.analytic_pc_y = CondGuessProb(pyz, Axis::kRows);
  report.std_error_x = BinomialStdError(report.empirical_pc_x, config.samples);
  report.std_error_y = BinomialStdError(report.empirical_pc_y, config.samples);
  return report;
}

bool WithinTolerance(const SimReport& report, double num_std_errors) {
  auto close = [num_std_errors](double emp, double analytic, double se) {
    if (se == 0.0) return std::abs(emp - analytic) <= kExactSlack;
    return std::abs(emp - analytic) <= num_std_errors * se;
  };
  return close(report.empirical_pc_y, report.analytic_pc_y,
               report.std_error_y) &&
         close(report.empirical_pc_x, report.analytic_pc_x,
               report.std_error_x);
}

}  // namespace pguess
