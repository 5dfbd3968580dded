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

#include "pguess/vector_binary.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/filter_solver.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

constexpr double kEndpointSlack = 1e-12;
constexpr double kFeasibilityRelTol = 1e-12;
constexpr int kHeuristicScanSteps = 2000;
constexpr int kBisectionSteps = 60;
constexpr int kMaxCertifiedBlock = 2;
constexpr double kCertifyTolerance = 1e-6;
constexpr double kCertifyResolution = 1e-6;

// alpha (1-p) / ((1-alpha) p), in [0, 1).
double CrossRatio(const VectorModel& m) {
  return m.alpha() * (1.0 - m.p()) / (m.alpha_bar() * m.p());
}

// 1 - x^n for x in [0, 1], accurate when x^n is close to 1.
double OneMinusPow(double x, int n) {
  if (x <= 0.0) return 1.0;
  return -std::expm1(n * std::log(x));
}

absl::StatusOr<double> CheckEps(const VectorModel& m, double eps) {
  if (!std::isfinite(eps) || eps < m.p() - kEndpointSlack ||
      eps > m.alpha_bar() + kEndpointSlack) {
    return absl::OutOfRangeError(absl::StrFormat(
        "eps=%.12g outside [p, 1-alpha] = [%g, %g]", eps, m.p(),
        m.alpha_bar()));
  }
  return std::clamp(eps, m.p(), m.alpha_bar());
}

// zeta_n(eps), computed relative to ((1-alpha) p)^n.
double BlockZeta(const VectorModel& m, double eps) {
  const int n = m.n();
  const double tail = OneMinusPow(eps / m.alpha_bar(), n);
  if (tail == 0.0) return 0.0;
  return std::exp(-n * std::log(m.p())) * tail /
         OneMinusPow(CrossRatio(m), n);
}

// zeta_n(eps) q^n without forming either factor separately.
double BlockZetaTimesQn(const VectorModel& m, double eps) {
  const int n = m.n();
  const double tail = OneMinusPow(eps / m.alpha_bar(), n);
  if (tail == 0.0) return 0.0;
  return std::exp(n * std::log(m.q() / m.p())) * tail /
         OneMinusPow(CrossRatio(m), n);
}

// Phi(k) = (q/p)^k / ((1-alpha)(1 - r^k)).
double Phi(const VectorModel& m, int k) {
  return std::exp(k * std::log(m.q() / m.p())) /
         (m.alpha_bar() * OneMinusPow(CrossRatio(m), k));
}

bool BlockFormulaFeasible(const VectorModel& m, double eps, double zeta) {
  if (zeta > 1.0 + kFeasibilityRelTol) return false;
  return ZnPerSymbolPrivacy(m, std::min(zeta, 1.0)) <=
         eps * (1.0 + kFeasibilityRelTol);
}

absl::StatusOr<double> BlockValue(const VectorModel& m, double eps) {
  const double remainder = 1.0 - BlockZetaTimesQn(m, eps);
  if (!(remainder >= 0.0)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "block formula leaves [0, 1] at eps=%.12g (1 - zeta q^n = %g)", eps,
        remainder));
  }
  return std::pow(remainder, 1.0 / m.n());
}

// Entry (x, y) of the n-fold Kronecker power of `base`, where bit k of each
// index selects the coordinate-k row and column.
Eigen::MatrixXd KroneckerPower(const Eigen::Matrix2d& base, int n) {
  const int size = 1 << n;
  Eigen::MatrixXd out(size, size);
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      double v = 1.0;
      for (int k = 0; k < n && v != 0.0; ++k) {
        v *= base((x >> k) & 1, (y >> k) & 1);
      }
      out(x, y) = v;
    }
  }
  return out;
}

absl::Status CheckMaterializable(int n) {
  if (n < 1 || n > kMaxMaterializedBlock) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "block length n=%d outside [1, %d] for explicit 2^n matrices", n,
        kMaxMaterializedBlock));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<VectorModel> VectorModel::Create(int n, double p,
                                                double alpha) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("block length n=%d must be >= 1", n));
  }
  if (!(p >= 0.5 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("p=%g must lie in [1/2, 1)", p));
  }
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("alpha=%g must lie in [0, 1/2)", alpha));
  }
  if (!(1.0 - alpha > p)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "need 1 - alpha > p for a non-trivial trade-off (p=%g, alpha=%g)", p,
        alpha));
  }
  return VectorModel(n, p, alpha);
}

std::string_view FormulaValidityName(FormulaValidity validity) {
  switch (validity) {
    case FormulaValidity::kCertified:
      return "certified";
    case FormulaValidity::kHeuristic:
      return "heuristic";
    case FormulaValidity::kUnknown:
      return "unknown";
  }
  return "unknown";
}

absl::StatusOr<double> MemorylessFrontier(const VectorModel& model,
                                          double eps) {
  PGUESS_ASSIGN_OR_RETURN(const double e, CheckEps(model, eps));
  const double a = model.alpha(), p = model.p();
  const double zeta = (1.0 - a - e) / ((1.0 - a) * p - a * (1.0 - p));
  return 1.0 - zeta * model.q();
}

absl::StatusOr<BlockFrontierPoint> BlockFrontier(
    const VectorModel& model, double eps, const ThresholdEstimate& threshold) {
  PGUESS_ASSIGN_OR_RETURN(const double e, CheckEps(model, eps));
  BlockFrontierPoint point;
  PGUESS_ASSIGN_OR_RETURN(point.value, BlockValue(model, e));
  point.zeta = BlockZeta(model, e);
  point.filter_feasible = BlockFormulaFeasible(model, e, point.zeta);
  if (e >= threshold.eps_l - kEndpointSlack) {
    point.validity = threshold.certified ? FormulaValidity::kCertified
                                         : FormulaValidity::kHeuristic;
  } else {
    point.validity = FormulaValidity::kUnknown;
  }
  return point;
}

absl::StatusOr<BlockFrontierPoint> BlockFrontier(const VectorModel& model,
                                                 double eps) {
  if (model.n() == 1) {
    return BlockFrontier(model, eps, ThresholdEstimate{model.p(), true});
  }
  return BlockFrontier(model, eps, HeuristicThreshold(model));
}

absl::StatusOr<Channel> ZnChannel::Expand() const {
  PGUESS_RETURN_IF_ERROR(CheckMaterializable(n_));
  if (!(gamma_ >= 0.0 && gamma_ <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Z_n crossover gamma=%g must lie in [0, 1]", gamma_));
  }
  const int size = 1 << n_;
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(size, size);
  w(size - 1, size - 1) = 1.0 - gamma_;
  w(size - 1, 0) = gamma_;
  return Channel::Create(std::move(w));
}

absl::StatusOr<ZnChannel> BlockZFilter(const VectorModel& model, double eps) {
  PGUESS_ASSIGN_OR_RETURN(const double e, CheckEps(model, eps));
  const double zeta = BlockZeta(model, e);
  if (zeta > 1.0 + kFeasibilityRelTol) {
    return absl::OutOfRangeError(absl::StrFormat(
        "zeta_n(%.12g) = %g exceeds 1; Z_n is not a channel here", e, zeta));
  }
  return ZnChannel(model.n(), std::min(zeta, 1.0));
}

double MaxPrivateZnCrossover(const VectorModel& model) {
  const int n = model.n();
  const double p = model.p(), a = model.alpha();
  // ((1-p)^n (1-alpha)^n - (p alpha)^n) / (((1-alpha) p)^n - (alpha(1-p))^n),
  // with numerator and denominator scaled by ((1-alpha) p)^n.
  const double ratio = (1.0 - p) / p;
  const double num = std::exp(n * std::log(ratio)) *
                     OneMinusPow(p * a / ((1.0 - p) * (1.0 - a)), n);
  return num / OneMinusPow(CrossRatio(model), n);
}

double ZnPerSymbolPrivacy(const VectorModel& model, double gamma) {
  const int n = model.n();
  const double p = model.p(), a = model.alpha(), ab = model.alpha_bar();
  // Every term is scaled by (1-alpha)^n. Outputs other than the all-zeros and
  // all-ones words keep their per-coordinate maxima, which multiply to
  // (1-alpha)^n over all words.
  auto pw = [n](double x) { return std::exp(n * std::log(x)); };
  const double zeros = pw(1.0 - p), ones = pw(p);
  const double col0 = std::max(zeros + gamma * pw((1.0 - p) * a / ab),
                               pw(p * a / ab) + gamma * ones);
  const double scaled = 1.0 - zeros - ones + col0 + (1.0 - gamma) * ones;
  return ab * std::pow(std::max(scaled, 0.0), 1.0 / n);
}

absl::StatusOr<GapBounds> MemorylessGapBounds(const VectorModel& model,
                                              double eps) {
  PGUESS_ASSIGN_OR_RETURN(const double e, CheckEps(model, eps));
  GapBounds bounds;
  if (model.p() > 0.5 && model.alpha() > 0.0) {
    bounds.lower =
        (model.alpha_bar() - e) * (Phi(model, 1) - Phi(model, model.n()));
  }
  if (model.p() == 0.5) {
    bounds.upper = model.alpha() / (2.0 * model.alpha_bar());
  }
  return bounds;
}

ThresholdEstimate HeuristicThreshold(const VectorModel& model) {
  ThresholdEstimate estimate{model.p(), false};
  if (model.n() == 1) return estimate;
  auto ok = [&model](double eps) {
    absl::StatusOr<double> block = BlockValue(model, eps);
    absl::StatusOr<double> mem = MemorylessFrontier(model, eps);
    if (!block.ok() || !mem.ok()) return false;
    return BlockFormulaFeasible(model, eps, BlockZeta(model, eps)) &&
           *block >= *mem - kEndpointSlack;
  };
  const double lo = model.p(), hi = model.alpha_bar();
  const double step = (hi - lo) / kHeuristicScanSteps;
  double good = hi;
  for (int i = 1; i <= kHeuristicScanSteps; ++i) {
    const double eps = i == kHeuristicScanSteps ? lo : hi - i * step;
    if (ok(eps)) {
      good = eps;
      continue;
    }
    double bad = eps;
    for (int k = 0; k < kBisectionSteps; ++k) {
      const double mid = 0.5 * (bad + good);
      (ok(mid) ? good : bad) = mid;
    }
    break;
  }
  estimate.eps_l = good;
  return estimate;
}

absl::StatusOr<ThresholdEstimate> EstimateThreshold(const VectorModel& model) {
  if (model.n() > kMaxCertifiedBlock) return HeuristicThreshold(model);
  PGUESS_ASSIGN_OR_RETURN(const JointDistribution joint, ProductJoint(model));
  GuessingSolverOptions options;
  options.num_outputs = 1 << model.n();
  auto agrees = [&](double eps) -> absl::StatusOr<bool> {
    absl::StatusOr<double> formula = BlockValue(model, eps);
    if (!formula.ok()) return false;
    PGUESS_ASSIGN_OR_RETURN(
        const FilterSolution best,
        SolvePrivacyAwareGuessing(joint, std::pow(eps, model.n()), options));
    const double brute = std::pow(best.utility, 1.0 / model.n());
    return std::abs(brute - *formula) <= kCertifyTolerance;
  };
  double lo = model.p(), hi = model.alpha_bar();
  PGUESS_ASSIGN_OR_RETURN(const bool at_top, agrees(hi));
  if (!at_top) {
    return absl::InternalError(
        "block formula disagrees with exhaustive optimization at eps = 1-alpha");
  }
  PGUESS_ASSIGN_OR_RETURN(const bool at_bottom, agrees(lo));
  if (at_bottom) return ThresholdEstimate{lo, true};
  while (hi - lo > kCertifyResolution) {
    const double mid = 0.5 * (lo + hi);
    PGUESS_ASSIGN_OR_RETURN(const bool mid_ok, agrees(mid));
    (mid_ok ? hi : lo) = mid;
  }
  return ThresholdEstimate{hi, true};
}

absl::StatusOr<JointDistribution> ProductJoint(const VectorModel& model) {
  PGUESS_RETURN_IF_ERROR(CheckMaterializable(model.n()));
  const double p = model.p(), a = model.alpha();
  Eigen::Matrix2d base;
  base << (1.0 - p) * (1.0 - a), (1.0 - p) * a, p * a, p * (1.0 - a);
  return JointDistribution::Create(KroneckerPower(base, model.n()));
}

absl::StatusOr<Channel> MemorylessFilter(int n, const Channel& per_symbol) {
  PGUESS_RETURN_IF_ERROR(CheckMaterializable(n));
  if (per_symbol.inputs() != 2 || per_symbol.outputs() != 2) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "per-symbol filter must be 2x2, got %dx%d", per_symbol.inputs(),
        per_symbol.outputs()));
  }
  const Eigen::Matrix2d base = per_symbol.matrix();
  return Channel::Create(KroneckerPower(base, n));
}

}  // namespace pguess
