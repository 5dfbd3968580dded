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

// Traces eps -> h(eps) over [P_c(X), P_c(X|Y)] and recovers its
// piecewise-linear structure (thresholds and per-segment slopes).

#ifndef PGUESS_GUESS_CURVE_H_
#define PGUESS_GUESS_CURVE_H_

#include <vector>

#include "absl/status/statusor.h"
#include "pguess/distribution.h"

namespace pguess {

struct CurveSample {
  double eps = 0.0;
  double h = 0.0;
};

struct GuessCurve {
  // Every evaluated point, sorted by eps.
  std::vector<CurveSample> samples;
  // eps_0 = P_c(X) < eps_1 < ... < eps_K = P_c(X|Y).
  std::vector<double> breakpoints;
  // slopes[i] is the slope on [breakpoints[i], breakpoints[i + 1]].
  std::vector<double> slopes;

  int num_segments() const { return static_cast<int>(slopes.size()); }
};

struct CurveOptions {
  // Two adjacent chords whose slopes differ by at most this are collinear.
  double slope_tol = 1e-6;
  int max_depth = 40;
  // Intervals narrower than this are not split further.
  double resolution = 1e-7;
};

// Adaptive bisection: an interval is split while the chords of its two halves
// disagree in slope. Since h is concave, equal half-chords imply h is linear
// on the whole interval. Fails with FailedPrecondition when
// P_c(X|Y) == P_c(X) (the domain is a single point).
absl::StatusOr<GuessCurve> TraceGuessCurve(const JointDistribution& joint,
                                           const CurveOptions& options = {});

}  // namespace pguess

#endif  // PGUESS_GUESS_CURVE_H_
