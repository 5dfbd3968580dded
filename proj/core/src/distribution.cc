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

#include "pguess/distribution.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

absl::Status CheckEntries(const Eigen::MatrixXd& matrix,
                          absl::string_view what) {
  if (matrix.rows() == 0 || matrix.cols() == 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must have at least one row and one column", what));
  }
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      const double v = matrix(r, c);
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s entry (%d, %d) is not finite", what, r, c));
      }
      if (v < 0.0) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s entry (%d, %d) = %g is negative", what, r, c, v));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Eigen::MatrixXd> MatrixFromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    return absl::InvalidArgumentError("matrix must be non-empty");
  }
  const size_t cols = rows.front().size();
  Eigen::MatrixXd m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "row %d has %d entries, expected %d", r, rows[r].size(), cols));
    }
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace

absl::Status ValidatePmf(std::span<const double> pmf) {
  if (pmf.empty()) return absl::InvalidArgumentError("pmf is empty");
  double total = 0.0;
  for (size_t i = 0; i < pmf.size(); ++i) {
    if (!std::isfinite(pmf[i]) || pmf[i] < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("pmf entry %d = %g is not a probability", i, pmf[i]));
    }
    total += pmf[i];
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    return absl::InvalidArgumentError(
        absl::StrFormat("pmf sums to %.15g, not 1", total));
  }
  return absl::OkStatus();
}

absl::StatusOr<JointDistribution> JointDistribution::Create(
    Eigen::MatrixXd matrix) {
  PGUESS_RETURN_IF_ERROR(CheckEntries(matrix, "joint distribution"));
  const double total = matrix.sum();
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "joint distribution sums to %.15g, not 1", total));
  }
  return JointDistribution(std::move(matrix));
}

absl::StatusOr<JointDistribution> JointDistribution::FromRows(
    const std::vector<std::vector<double>>& rows) {
  PGUESS_ASSIGN_OR_RETURN(Eigen::MatrixXd m, MatrixFromRows(rows));
  return Create(std::move(m));
}

absl::StatusOr<JointDistribution> JointDistribution::Product(
    std::span<const double> row_pmf, std::span<const double> col_pmf) {
  PGUESS_RETURN_IF_ERROR(ValidatePmf(row_pmf));
  PGUESS_RETURN_IF_ERROR(ValidatePmf(col_pmf));
  Eigen::MatrixXd m(row_pmf.size(), col_pmf.size());
  for (size_t r = 0; r < row_pmf.size(); ++r) {
    for (size_t c = 0; c < col_pmf.size(); ++c) m(r, c) = row_pmf[r] * col_pmf[c];
  }
  return Create(std::move(m));
}

absl::StatusOr<JointDistribution> JointDistribution::Diagonal(
    std::span<const double> pmf) {
  PGUESS_RETURN_IF_ERROR(ValidatePmf(pmf));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(pmf.size(), pmf.size());
  for (size_t i = 0; i < pmf.size(); ++i) m(i, i) = pmf[i];
  return Create(std::move(m));
}

Eigen::VectorXd JointDistribution::Marginal(Axis axis) const {
  if (axis == Axis::kRows) return matrix_.rowwise().sum();
  return matrix_.colwise().sum().transpose();
}

JointDistribution JointDistribution::Transposed() const {
  return JointDistribution(matrix_.transpose());
}

absl::StatusOr<Channel> Channel::Create(Eigen::MatrixXd matrix) {
  PGUESS_RETURN_IF_ERROR(CheckEntries(matrix, "channel"));
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    const double total = matrix.row(r).sum();
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "channel row %d sums to %.15g, not 1", r, total));
    }
  }
  return Channel(std::move(matrix));
}

absl::StatusOr<Channel> Channel::FromRows(
    const std::vector<std::vector<double>>& rows) {
  PGUESS_ASSIGN_OR_RETURN(Eigen::MatrixXd m, MatrixFromRows(rows));
  return Create(std::move(m));
}

Channel Channel::Identity(int size, int extra_outputs) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size + extra_outputs);
  for (int i = 0; i < size; ++i) m(i, i) = 1.0;
  return Channel(std::move(m));
}

absl::StatusOr<Channel> Channel::Constant(int inputs,
                                          std::span<const double> output_pmf) {
  if (inputs < 1) return absl::InvalidArgumentError("inputs must be >= 1");
  PGUESS_RETURN_IF_ERROR(ValidatePmf(output_pmf));
  Eigen::MatrixXd m(inputs, output_pmf.size());
  for (int r = 0; r < inputs; ++r) {
    for (size_t c = 0; c < output_pmf.size(); ++c) m(r, c) = output_pmf[c];
  }
  return Channel(std::move(m));
}

double GuessProb(const JointDistribution& dist, Axis axis) {
  return dist.Marginal(axis).maxCoeff();
}

double CondGuessProb(const JointDistribution& dist, Axis target) {
  const Eigen::MatrixXd& m = dist.matrix();
  if (target == Axis::kRows) return m.colwise().maxCoeff().sum();
  return m.rowwise().maxCoeff().sum();
}

std::vector<int> MapGuesser(const JointDistribution& dist, Axis target) {
  const Eigen::MatrixXd& m = dist.matrix();
  const int others = target == Axis::kRows ? dist.cols() : dist.rows();
  const int candidates = target == Axis::kRows ? dist.rows() : dist.cols();
  std::vector<int> guess(others, 0);
  for (int v = 0; v < others; ++v) {
    double best = -1.0;
    for (int u = 0; u < candidates; ++u) {
      const double w = target == Axis::kRows ? m(u, v) : m(v, u);
      if (w > best) {
        best = w;
        guess[v] = u;
      }
    }
  }
  return guess;
}

absl::StatusOr<JointDistribution> Compose(const JointDistribution& dist,
                                          const Channel& filter, Axis side) {
  const int composed = side == Axis::kCols ? dist.cols() : dist.rows();
  if (filter.inputs() != composed) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "filter has %d inputs but the composed axis has %d values",
        filter.inputs(), composed));
  }
  const Eigen::MatrixXd& f = filter.matrix();
  // Filters used here are often mostly zeros (identity-like Z-channels), so
  // skip zero entries instead of running a dense product.
  const Eigen::MatrixXd base = side == Axis::kCols
                                   ? dist.matrix()
                                   : Eigen::MatrixXd(dist.matrix().transpose());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(base.rows(), f.cols());
  for (Eigen::Index y = 0; y < f.rows(); ++y) {
    for (Eigen::Index z = 0; z < f.cols(); ++z) {
      const double w = f(y, z);
      if (w == 0.0) continue;
      out.col(z) += w * base.col(y);
    }
  }
  return JointDistribution::Create(std::move(out));
}

absl::StatusOr<FilterPerformance> EvaluateFilter(const JointDistribution& dist,
                                                 const Channel& filter) {
  PGUESS_ASSIGN_OR_RETURN(JointDistribution xz,
                          Compose(dist, filter, Axis::kCols));
  const Eigen::VectorXd q = dist.Marginal(Axis::kCols);
  PGUESS_ASSIGN_OR_RETURN(
      JointDistribution self,
      JointDistribution::Diagonal(std::span<const double>(q.data(), q.size())));
  PGUESS_ASSIGN_OR_RETURN(JointDistribution yz,
                          Compose(self, filter, Axis::kCols));
  return FilterPerformance{.utility = CondGuessProb(yz, Axis::kRows),
                           .privacy = CondGuessProb(xz, Axis::kRows)};
}

}  // namespace pguess
