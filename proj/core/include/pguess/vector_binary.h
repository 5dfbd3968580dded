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

// Privacy-aware guessing for i.i.d. binary vectors: X_k ~ Bernoulli(p),
// Y_k = X_k xor V_k with V_k ~ Bernoulli(alpha), and binary-vector releases
// Z^n. The per-symbol threshold eps constrains P_c(X^n|Z^n) <= eps^n and
// utilities are reported per symbol, P_c(Y^n|Z^n)^(1/n).
//
// Two frontiers are provided: the best memoryless (per-coordinate) filter,
// and the block filter Z_n(gamma) that sends the all-ones word to the
// all-zeros word with probability gamma. The block formula is only proven
// optimal above an unspecified threshold eps_L; EstimateThreshold certifies
// it by brute force for n <= 2.

#ifndef PGUESS_VECTOR_BINARY_H_
#define PGUESS_VECTOR_BINARY_H_

#include <optional>
#include <string_view>

#include "absl/status/statusor.h"
#include "pguess/distribution.h"

namespace pguess {

// Largest block length whose 2^n x 2^n matrices are ever materialized.
inline constexpr int kMaxMaterializedBlock = 10;

class VectorModel {
 public:
  // Requires n >= 1, p in [1/2, 1), alpha in [0, 1/2) and 1 - alpha > p.
  static absl::StatusOr<VectorModel> Create(int n, double p, double alpha);

  int n() const { return n_; }
  double p() const { return p_; }
  double alpha() const { return alpha_; }
  double alpha_bar() const { return 1.0 - alpha_; }
  // P(Y_k = 1).
  double q() const { return alpha_ * (1.0 - p_) + (1.0 - alpha_) * p_; }

 private:
  VectorModel(int n, double p, double alpha) : n_(n), p_(p), alpha_(alpha) {}

  int n_;
  double p_, alpha_;
};

// Best memoryless filter: 1 - zeta(eps) q with
// zeta(eps) = (1 - alpha - eps) / ((1 - alpha) p - alpha (1 - p)),
// independent of n. Requires eps in [p, 1 - alpha].
absl::StatusOr<double> MemorylessFrontier(const VectorModel& model, double eps);

struct ThresholdEstimate {
  double eps_l = 0.0;
  // True when the block formula was checked against brute-force
  // optimization; false for the heuristic.
  bool certified = false;
};

enum class FormulaValidity { kCertified, kHeuristic, kUnknown };

std::string_view FormulaValidityName(FormulaValidity validity);

struct BlockFrontierPoint {
  // (1 - zeta_n(eps) q^n)^(1/n).
  double value = 0.0;
  // zeta_n(eps) = ((1-alpha)^n - eps^n) / (((1-alpha) p)^n - (alpha (1-p))^n).
  double zeta = 0.0;
  // True when Z_n(zeta) is a channel (zeta <= 1) that meets the privacy
  // constraint P_c(X^n|Z^n) <= eps^n.
  bool filter_feasible = false;
  FormulaValidity validity = FormulaValidity::kUnknown;
};

// Requires eps in [p, 1 - alpha]. Below `threshold` the value is still
// returned, flagged kUnknown.
absl::StatusOr<BlockFrontierPoint> BlockFrontier(
    const VectorModel& model, double eps, const ThresholdEstimate& threshold);
// Uses eps_L = p for n = 1 and HeuristicThreshold otherwise.
absl::StatusOr<BlockFrontierPoint> BlockFrontier(const VectorModel& model,
                                                 double eps);

class ZnChannel {
 public:
  ZnChannel(int n, double gamma) : n_(n), gamma_(gamma) {}

  int n() const { return n_; }
  double gamma() const { return gamma_; }
  // The 2^n x 2^n matrix; bit k of an index is coordinate k of the word.
  absl::StatusOr<Channel> Expand() const;

 private:
  int n_;
  double gamma_;
};

// Z_n(zeta_n(eps)). OutOfRange when zeta_n(eps) > 1, i.e. eps lies below the
// range where the block formula describes a channel.
absl::StatusOr<ZnChannel> BlockZFilter(const VectorModel& model, double eps);

// Largest gamma for which the all-zeros input word stays the adversary's
// best guess for the all-zeros output of Z_n(gamma). Up to this point
// P_c(X^n|Z^n) = (1-alpha)^n - gamma (((1-alpha) p)^n - (alpha (1-p))^n).
double MaxPrivateZnCrossover(const VectorModel& model);

// Per-symbol adversary success P_c(X^n|Z^n)^(1/n) of Z_n(gamma), exact for
// every gamma in [0, 1].
double ZnPerSymbolPrivacy(const VectorModel& model, double gamma);

struct GapBounds {
  // (1 - alpha - eps) (Phi(1) - Phi(n)) when p > 1/2 and alpha > 0, else 0.
  double lower = 0.0;
  // alpha / (2 (1 - alpha)) when p = 1/2.
  std::optional<double> upper;
};

// Bounds on BlockFrontier - MemorylessFrontier. Requires eps in [p, 1-alpha].
absl::StatusOr<GapBounds> MemorylessGapBounds(const VectorModel& model,
                                              double eps);

// Smallest eps such that, on [eps, 1 - alpha], Z_n(zeta_n(eps)) is a private
// channel and the block formula dominates the memoryless one. Uncertified.
ThresholdEstimate HeuristicThreshold(const VectorModel& model);

// For n <= 2: bisection (to 1e-6) for the smallest eps at which exhaustive
// LP optimization over 2^n x 2^n filters matches the block formula within
// 1e-6. For n >= 3 returns HeuristicThreshold.
absl::StatusOr<ThresholdEstimate> EstimateThreshold(const VectorModel& model);

// P_{X^n Y^n} as a 2^n x 2^n joint. Requires n <= kMaxMaterializedBlock.
absl::StatusOr<JointDistribution> ProductJoint(const VectorModel& model);

// Coordinate-wise application of a binary channel to n-bit words.
absl::StatusOr<Channel> MemorylessFilter(int n, const Channel& per_symbol);

}  // namespace pguess

#endif  // PGUESS_VECTOR_BINARY_H_
