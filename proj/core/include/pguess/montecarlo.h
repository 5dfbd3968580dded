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

// Seeded simulation of the chain X - Y - Z: draws (X, Y) from a joint, Z from
// a filter, and scores exact MAP guessers against the analytic guessing
// probabilities.

#ifndef PGUESS_MONTECARLO_H_
#define PGUESS_MONTECARLO_H_

#include <cstdint>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "pguess/distribution.h"
#include "pguess/vector_binary.h"

namespace pguess {

inline constexpr std::string_view kGeneratorName = "mt19937_64";

struct JointScenario {
  JointDistribution joint;
  Channel filter;
};

enum class VectorFilterKind {
  // Z(gamma) = [[1, 0], [gamma, 1 - gamma]] on every coordinate.
  kMemoryless,
  // Z_n(gamma) on the whole word.
  kBlockZn,
};

struct VectorScenario {
  VectorModel model;
  VectorFilterKind kind = VectorFilterKind::kBlockZn;
  double gamma = 0.0;
};

// Expands a vector scenario to 2^n x 2^n matrices (n <= kMaxMaterializedBlock).
absl::StatusOr<JointScenario> Materialize(const VectorScenario& scenario);

struct SimConfig {
  uint64_t seed = 0;
  int64_t samples = 0;
  std::variant<JointScenario, VectorScenario> model;
};

// For vector scenarios the probabilities are for whole words (P_c(Y^n|Z^n)).
struct SimReport {
  double empirical_pc_y = 0.0;
  double empirical_pc_x = 0.0;
  double analytic_pc_y = 0.0;
  double analytic_pc_x = 0.0;
  // sqrt(f (1 - f) / samples) for the matching empirical frequency f.
  double std_error_y = 0.0;
  double std_error_x = 0.0;
  int64_t samples = 0;
  uint64_t seed = 0;
  std::string_view generator = kGeneratorName;
};

absl::StatusOr<SimReport> Simulate(const SimConfig& config);

// Both empirical values within `num_std_errors` standard errors of the
// analytic ones; a zero standard error demands equality up to 1e-12.
bool WithinTolerance(const SimReport& report, double num_std_errors);

}  // namespace pguess

#endif  // PGUESS_MONTECARLO_H_
