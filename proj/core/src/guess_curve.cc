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

#include "pguess/guess_curve.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/filter_solver.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

// Absolute error assumed on each h value; slopes over an interval of width w
// are trusted to ~kValueNoise / w.
constexpr double kValueNoise = 1e-12;

struct Leaf {
  double a, b, ha, hb;
  bool linear;
  double slope() const { return (hb - ha) / (b - a); }
};

struct Run {
  double a, b, ha, hb;
  double slope() const { return (hb - ha) / (b - a); }
  double At(double e) const { return ha + slope() * (e - a); }
};

class Tracer {
 public:
  Tracer(const JointDistribution& joint, const CurveOptions& options)
      : joint_(joint), options_(options) {}

  absl::StatusOr<double> Eval(double eps) {
    auto it = cache_.find(eps);
    if (it != cache_.end()) return it->second;
    PGUESS_ASSIGN_OR_RETURN(FilterSolution s,
                            SolvePrivacyAwareGuessing(joint_, eps));
    cache_.emplace(eps, s.utility);
    return s.utility;
  }

  absl::Status Refine(double a, double b, double ha, double hb, int depth) {
    const double m = 0.5 * (a + b);
    PGUESS_ASSIGN_OR_RETURN(double hm, Eval(m));
    const double left = (hm - ha) / (m - a);
    const double right = (hb - hm) / (b - m);
    const double allowance = options_.slope_tol + 4.0 * kValueNoise / (m - a);
    if (std::abs(left - right) <= allowance) {
      leaves_.push_back({a, b, ha, hb, true});
      return absl::OkStatus();
    }
    if (depth >= options_.max_depth || b - a <= options_.resolution) {
      leaves_.push_back({a, b, ha, hb, false});
      return absl::OkStatus();
    }
    PGUESS_RETURN_IF_ERROR(Refine(a, m, ha, hm, depth + 1));
    return Refine(m, b, hm, hb, depth + 1);
  }

  const std::vector<Leaf>& leaves() const { return leaves_; }
  const std::map<double, double>& cache() const { return cache_; }

 private:
  const JointDistribution& joint_;
  CurveOptions options_;
  std::map<double, double> cache_;
  std::vector<Leaf> leaves_;
};

// Groups consecutive linear leaves of equal slope into runs. Non-linear
// leaves (narrow intervals straddling a threshold) separate runs.
std::vector<Run> CollectRuns(const std::vector<Leaf>& leaves, double tol) {
  std::vector<Run> runs;
  bool open = false;
  double last_slope = 0.0, last_width = 0.0;
  for (const Leaf& leaf : leaves) {
    if (!leaf.linear) {
      open = false;
      continue;
    }
    const double width = leaf.b - leaf.a;
    const double allowance =
        tol + 4.0 * kValueNoise / std::min(width, last_width);
    if (open && std::abs(leaf.slope() - last_slope) <= allowance &&
        runs.back().b == leaf.a) {
      runs.back().b = leaf.b;
      runs.back().hb = leaf.hb;
    } else {
      runs.push_back({leaf.a, leaf.b, leaf.ha, leaf.hb});
      open = true;
    }
    last_slope = leaf.slope();
    last_width = width;
  }
  return runs;
}

// Joins neighbouring runs whose chord slopes agree within `tol`.
std::vector<Run> MergeRuns(std::vector<Run> runs, double tol) {
  std::vector<Run> merged;
  for (const Run& run : runs) {
    if (!merged.empty() &&
        std::abs(merged.back().slope() - run.slope()) <= tol) {
      merged.back().b = run.b;
      merged.back().hb = run.hb;
    } else {
      merged.push_back(run);
    }
  }
  return merged;
}

}  // namespace

absl::StatusOr<GuessCurve> TraceGuessCurve(const JointDistribution& joint,
                                           const CurveOptions& options) {
  const double lo = GuessProb(joint, Axis::kRows);
  const double hi = CondGuessProb(joint, Axis::kRows);
  if (hi - lo <= options.resolution) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "P_c(X|Y) = %.12g equals P_c(X) = %.12g: Y carries no guessing "
        "advantage about X and h is identically 1",
        hi, lo));
  }

  Tracer tracer(joint, options);
  PGUESS_ASSIGN_OR_RETURN(double h_lo, tracer.Eval(lo));
  PGUESS_ASSIGN_OR_RETURN(double h_hi, tracer.Eval(hi));
  PGUESS_RETURN_IF_ERROR(tracer.Refine(lo, hi, h_lo, h_hi, 0));

  std::vector<Run> runs =
      MergeRuns(CollectRuns(tracer.leaves(), options.slope_tol),
                options.slope_tol);
  if (runs.empty()) {
    // Only possible if every leaf straddled a threshold; fall back to the
    // chord over the whole domain.
    runs.push_back({lo, hi, h_lo, h_hi});
  }

  GuessCurve curve;
  for (const auto& [eps, h] : tracer.cache()) curve.samples.push_back({eps, h});
  curve.breakpoints.push_back(lo);
  for (size_t i = 0; i + 1 < runs.size(); ++i) {
    const Run& left = runs[i];
    const Run& right = runs[i + 1];
    // Intersect the two supporting lines; the threshold lies in the gap
    // between the runs.
    double cross = (right.At(0.0) - left.At(0.0)) / (left.slope() - right.slope());
    cross = std::clamp(cross, left.b, right.a);
    curve.breakpoints.push_back(cross);
  }
  curve.breakpoints.push_back(hi);
  for (const Run& run : runs) curve.slopes.push_back(run.slope());
  return curve;
}

}  // namespace pguess
