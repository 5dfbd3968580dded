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

// Renyi entropy, Arimoto conditional entropy and Arimoto mutual information.
// All logarithms are base 2, so every quantity is in bits.

#ifndef PGUESS_ENTROPY_H_
#define PGUESS_ENTROPY_H_

#include <span>

#include "absl/status/statusor.h"
#include "pguess/distribution.h"

namespace pguess {

// Order of an entropy: 1 (Shannon), a finite value > 1, or infinity
// (min-entropy / guessing).
class Order {
 public:
  static Order One() { return Order(Kind::kOne, 1.0); }
  static Order Infinity() { return Order(Kind::kInfinity, 0.0); }
  // Requires nu > 1.
  static absl::StatusOr<Order> Finite(double nu);
  // Maps 1 to One(), +inf to Infinity(), values > 1 to Finite(); rejects the
  // rest (orders below 1 are not supported).
  static absl::StatusOr<Order> FromValue(double nu);

  bool is_one() const { return kind_ == Kind::kOne; }
  bool is_infinity() const { return kind_ == Kind::kInfinity; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  // Only meaningful for finite orders.
  double value() const { return value_; }

 private:
  enum class Kind { kOne, kFinite, kInfinity };
  Order(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

// Finite orders in (1, 1 + kShannonOrderBand) use the Shannon branch and
// orders above kMinEntropyOrder use the min-entropy branch.
inline constexpr double kShannonOrderBand = 1e-6;
inline constexpr double kMinEntropyOrder = 1e6;

absl::StatusOr<double> RenyiEntropy(std::span<const double> pmf, Order order);

// Renyi entropy of one marginal of `dist`.
double MarginalRenyiEntropy(const JointDistribution& dist, Axis axis,
                            Order order);

// H^A_nu(target | other) = nu/(1-nu) * log2 sum_v (sum_u P(u,v)^nu)^(1/nu).
double ArimotoCondEntropy(const JointDistribution& dist, Order order,
                          Axis target);

// I^A_nu(target; other) = H_nu(target) - H^A_nu(target | other). At infinite
// order this is log2(P_c(target|other) / P_c(target)).
double ArimotoMutualInformation(const JointDistribution& dist, Order order,
                                Axis target);

}  // namespace pguess

#endif  // PGUESS_ENTROPY_H_
