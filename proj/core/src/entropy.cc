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

#include "pguess/entropy.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "pguess/status_macros.h"

namespace pguess {
namespace {

enum class Branch { kShannon, kFinite, kMin };

Branch Route(Order order) {
  if (order.is_one()) return Branch::kShannon;
  if (order.is_infinity()) return Branch::kMin;
  if (order.value() < 1.0 + kShannonOrderBand) return Branch::kShannon;
  if (order.value() > kMinEntropyOrder) return Branch::kMin;
  return Branch::kFinite;
}

template <typename Vec>
double Shannon(const Vec& pmf) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(pmf.size()); ++i) {
    const double p = pmf[i];
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// log2 of (sum_i p_i^nu)^(1/nu), computed relative to the largest entry so
// that large orders do not underflow.
template <typename Vec>
double Log2NuNorm(const Vec& values, double nu) {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(values.size()); ++i) {
    largest = std::max(largest, static_cast<double>(values[i]));
  }
  if (largest <= 0.0) return -std::numeric_limits<double>::infinity();
  double scaled = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(values.size()); ++i) {
    if (values[i] > 0.0) scaled += std::pow(values[i] / largest, nu);
  }
  return std::log2(largest) + std::log2(scaled) / nu;
}

template <typename Vec>
double Renyi(const Vec& pmf, Order order) {
  switch (Route(order)) {
    case Branch::kShannon:
      return Shannon(pmf);
    case Branch::kMin: {
      double largest = 0.0;
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(pmf.size()); ++i) {
        largest = std::max(largest, static_cast<double>(pmf[i]));
      }
      return -std::log2(largest);
    }
    case Branch::kFinite: {
      const double nu = order.value();
      // 1/(1-nu) log2 sum p^nu == nu/(1-nu) log2 ||p||_nu.
      return nu / (1.0 - nu) * Log2NuNorm(pmf, nu);
    }
  }
  return 0.0;
}

}  // namespace

absl::StatusOr<Order> Order::Finite(double nu) {
  if (!(nu > 1.0) || !std::isfinite(nu)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("finite order must be > 1, got %g", nu));
  }
  return Order(Kind::kFinite, nu);
}

absl::StatusOr<Order> Order::FromValue(double nu) {
  if (nu == 1.0) return One();
  if (std::isinf(nu) && nu > 0) return Infinity();
  return Finite(nu);
}

absl::StatusOr<double> RenyiEntropy(std::span<const double> pmf, Order order) {
  PGUESS_RETURN_IF_ERROR(ValidatePmf(pmf));
  return Renyi(pmf, order);
}

double MarginalRenyiEntropy(const JointDistribution& dist, Axis axis,
                            Order order) {
  return Renyi(dist.Marginal(axis), order);
}

double ArimotoCondEntropy(const JointDistribution& dist, Order order,
                          Axis target) {
  // Orient so that rows are the target and columns the conditioning variable.
  const Eigen::MatrixXd m = target == Axis::kRows
                                ? dist.matrix()
                                : Eigen::MatrixXd(dist.matrix().transpose());
  switch (Route(order)) {
    case Branch::kShannon: {
      double h = 0.0;
      for (Eigen::Index v = 0; v < m.cols(); ++v) {
        const double pv = m.col(v).sum();
        for (Eigen::Index u = 0; u < m.rows(); ++u) {
          const double puv = m(u, v);
          if (puv > 0.0) h -= puv * std::log2(puv / pv);
        }
      }
      return h;
    }
    case Branch::kMin:
      return -std::log2(CondGuessProb(dist, target));
    case Branch::kFinite: {
      const double nu = order.value();
      // sum_v ||P(., v)||_nu, accumulated as max_v-relative terms.
      double total = 0.0;
      for (Eigen::Index v = 0; v < m.cols(); ++v) {
        const Eigen::VectorXd column = m.col(v);
        const double log_norm = Log2NuNorm(column, nu);
        if (std::isfinite(log_norm)) total += std::exp2(log_norm);
      }
      return nu / (1.0 - nu) * std::log2(total);
    }
  }
  return 0.0;
}

double ArimotoMutualInformation(const JointDistribution& dist, Order order,
                                Axis target) {
  if (Route(order) == Branch::kMin) {
    return std::log2(CondGuessProb(dist, target) / GuessProb(dist, target));
  }
  return MarginalRenyiEntropy(dist, target, order) -
         ArimotoCondEntropy(dist, order, target);
}

}  // namespace pguess
