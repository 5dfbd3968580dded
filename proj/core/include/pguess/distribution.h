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

// Finite joint distributions, stochastic channels and MAP guessing
// probabilities.
//
// A JointDistribution P_XY is stored as an M x N matrix whose row index is x
// and column index is y. A Channel is a row-stochastic R x C matrix whose row
// r is the conditional output distribution given input r. Both types are
// immutable values validated on construction; inputs are never silently
// renormalized.

#ifndef PGUESS_DISTRIBUTION_H_
#define PGUESS_DISTRIBUTION_H_

#include <span>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace pguess {

// Tolerance used when validating user-supplied probabilities.
inline constexpr double kProbabilityTolerance = 1e-9;

// Selects one of the two variables of a joint distribution: kRows is the row
// variable (X for P_XY), kCols the column variable (Y for P_XY).
enum class Axis { kRows, kCols };

class JointDistribution {
 public:
  // Fails with InvalidArgument if the matrix is empty, has a negative or
  // non-finite entry, or does not sum to 1 within kProbabilityTolerance.
  static absl::StatusOr<JointDistribution> Create(Eigen::MatrixXd matrix);
  static absl::StatusOr<JointDistribution> FromRows(
      const std::vector<std::vector<double>>& rows);

  // Product distribution of two pmfs.
  static absl::StatusOr<JointDistribution> Product(
      std::span<const double> row_pmf, std::span<const double> col_pmf);

  // The joint of (V, V) for V ~ pmf: a diagonal matrix. Composing it with a
  // channel P_Z|V on kCols yields P_VZ.
  static absl::StatusOr<JointDistribution> Diagonal(
      std::span<const double> pmf);

  int rows() const { return static_cast<int>(matrix_.rows()); }
  int cols() const { return static_cast<int>(matrix_.cols()); }
  double operator()(int row, int col) const { return matrix_(row, col); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  // Marginal of the chosen variable, recomputed on every call.
  Eigen::VectorXd Marginal(Axis axis) const;

  JointDistribution Transposed() const;

 private:
  explicit JointDistribution(Eigen::MatrixXd matrix)
      : matrix_(std::move(matrix)) {}

  Eigen::MatrixXd matrix_;
};

class Channel {
 public:
  // Fails with InvalidArgument unless every entry is finite and nonnegative
  // and every row sums to 1 within kProbabilityTolerance.
  static absl::StatusOr<Channel> Create(Eigen::MatrixXd matrix);
  static absl::StatusOr<Channel> FromRows(
      const std::vector<std::vector<double>>& rows);

  // size x size identity, optionally padded with `extra_outputs` zero columns.
  static Channel Identity(int size, int extra_outputs = 0);

  // Every input maps to the same output distribution `output_pmf`.
  static absl::StatusOr<Channel> Constant(int inputs,
                                          std::span<const double> output_pmf);

  int inputs() const { return static_cast<int>(matrix_.rows()); }
  int outputs() const { return static_cast<int>(matrix_.cols()); }
  double operator()(int input, int output) const {
    return matrix_(input, output);
  }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  explicit Channel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {}

  Eigen::MatrixXd matrix_;
};

// Checks that `pmf` is a finite nonnegative vector summing to 1.
absl::Status ValidatePmf(std::span<const double> pmf);

// P_c(U) = max_u P_U(u) for the marginal selected by `axis`.
double GuessProb(const JointDistribution& dist, Axis axis);

// P_c(target | other) = sum over the other variable of the maximum joint
// probability along `target`.
double CondGuessProb(const JointDistribution& dist, Axis target);

// MAP guesser of `target` from the other variable: entry v is the argmax over
// target values of P(target, v). Ties go to the lowest index.
std::vector<int> MapGuesser(const JointDistribution& dist, Axis target);

// Passes the variable on `side` through `filter`. For side == kCols the result
// is P_XZ (rows x filter outputs). For side == kRows the row variable is
// filtered instead and the result pairs the column variable with that output
// (cols x filter outputs). Fails if the filter's input count does not match.
absl::StatusOr<JointDistribution> Compose(const JointDistribution& dist,
                                          const Channel& filter, Axis side);

// Utility P_c(Y|Z) and privacy P_c(X|Z) of a filter P_Z|Y applied to the
// column variable of P_XY.
struct FilterPerformance {
  double utility = 0.0;
  double privacy = 0.0;
};
absl::StatusOr<FilterPerformance> EvaluateFilter(const JointDistribution& dist,
                                                 const Channel& filter);

}  // namespace pguess

#endif  // PGUESS_DISTRIBUTION_H_
