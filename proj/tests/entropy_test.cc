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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace pguess {
namespace {

Order Nu(double nu) { return Order::FromValue(nu).value(); }

JointDistribution BscJoint() {
  return JointDistribution::FromRows({{0.32, 0.08}, {0.12, 0.48}}).value();
}

TEST(OrderTest, FromValue) {
  EXPECT_TRUE(Nu(1.0).is_one());
  EXPECT_TRUE(Nu(std::numeric_limits<double>::infinity()).is_infinity());
  EXPECT_TRUE(Nu(2.0).is_finite());
  EXPECT_DOUBLE_EQ(Nu(2.0).value(), 2.0);
  EXPECT_FALSE(Order::FromValue(0.5).ok());
  EXPECT_FALSE(Order::FromValue(-1.0).ok());
  EXPECT_FALSE(Order::FromValue(std::nan("")).ok());
  EXPECT_FALSE(Order::Finite(1.0).ok());
}

TEST(RenyiEntropyTest, Examples) {
  const std::vector<double> half = {0.5, 0.5};
  for (Order o : {Order::One(), Nu(1.5), Nu(2.0), Order::Infinity()}) {
    EXPECT_NEAR(RenyiEntropy(half, o).value(), 1.0, 1e-12);
  }
  const std::vector<double> skew = {0.6, 0.4};
  EXPECT_NEAR(RenyiEntropy(skew, Order::Infinity()).value(), 0.7370, 1e-4);
  EXPECT_NEAR(RenyiEntropy(skew, Nu(2.0)).value(), 0.9434, 1e-4);
  EXPECT_NEAR(RenyiEntropy(skew, Order::One()).value(),
              -(0.6 * std::log2(0.6) + 0.4 * std::log2(0.4)), 1e-12);
}

TEST(RenyiEntropyTest, RejectsInvalidPmf) {
  EXPECT_FALSE(RenyiEntropy(std::vector{0.5, 0.6}, Order::One()).ok());
  EXPECT_FALSE(RenyiEntropy(std::vector<double>{}, Order::One()).ok());
}

TEST(RenyiEntropyTest, NonIncreasingInOrder) {
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> expo(1.0);
  const std::vector<Order> orders = {Order::One(), Nu(1.5), Nu(2.0), Nu(4.0),
                                     Nu(16.0), Order::Infinity()};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> pmf(2 + trial % 6);
    double s = 0.0;
    for (double& v : pmf) s += (v = expo(rng));
    for (double& v : pmf) v /= s;
    double prev = std::numeric_limits<double>::infinity();
    for (Order o : orders) {
      const double h = RenyiEntropy(pmf, o).value();
      EXPECT_LE(h, prev + 1e-12);
      prev = h;
    }
  }
}

TEST(RenyiEntropyTest, ContinuityAnchors) {
  const std::vector<double> pmf = {0.5, 0.3, 0.15, 0.05};
  const double shannon = RenyiEntropy(pmf, Order::One()).value();
  const double min_entropy = -std::log2(0.5);
  EXPECT_NEAR(RenyiEntropy(pmf, Nu(1.0 + 1e-6)).value(), shannon, 1e-3);
  EXPECT_NEAR(RenyiEntropy(pmf, Nu(1.0 + 1e-3)).value(), shannon, 1e-3);
  EXPECT_NEAR(RenyiEntropy(pmf, Nu(1e6)).value(), min_entropy, 1e-3);
  EXPECT_NEAR(RenyiEntropy(pmf, Nu(1e7)).value(), min_entropy, 1e-12);
  // Large finite orders stay finite thanks to max-relative scaling.
  const std::vector<double> tiny = {1e-200, 1.0 - 1e-200};
  EXPECT_TRUE(std::isfinite(RenyiEntropy(tiny, Nu(500.0)).value()));
}

TEST(ArimotoTest, CondEntropyExamples) {
  EXPECT_NEAR(ArimotoCondEntropy(BscJoint(), Order::Infinity(), Axis::kRows),
              -std::log2(0.8), 1e-12);
  EXPECT_NEAR(ArimotoCondEntropy(BscJoint(), Order::Infinity(), Axis::kRows),
              0.3219, 1e-4);
  auto same = JointDistribution::Diagonal(std::vector{0.3, 0.7}).value();
  for (Order o : {Order::One(), Nu(2.0), Nu(7.5), Order::Infinity()}) {
    EXPECT_NEAR(ArimotoCondEntropy(same, o, Axis::kRows), 0.0, 1e-12);
  }
}

TEST(ArimotoTest, ProductDistributionsCarryNoInformation) {
  auto product = JointDistribution::Product(std::vector{0.7, 0.2, 0.1},
                                            std::vector{0.4, 0.6})
                     .value();
  const std::vector<double> px = {0.7, 0.2, 0.1};
  for (Order o : {Order::One(), Nu(1.5), Nu(3.0), Order::Infinity()}) {
    EXPECT_NEAR(ArimotoCondEntropy(product, o, Axis::kRows),
                RenyiEntropy(px, o).value(), 1e-12);
    EXPECT_NEAR(ArimotoMutualInformation(product, o, Axis::kRows), 0.0, 1e-12);
  }
}

TEST(ArimotoTest, MutualInformationExamples) {
  EXPECT_NEAR(ArimotoMutualInformation(BscJoint(), Order::Infinity(), Axis::kRows),
              std::log2(0.8 / 0.6), 1e-12);
  auto same = JointDistribution::Diagonal(std::vector{0.5, 0.5}).value();
  EXPECT_NEAR(ArimotoMutualInformation(same, Order::One(), Axis::kRows), 1.0,
              1e-12);
}

TEST(ArimotoTest, MutualInformationNonNegativeAndBridge) {
  std::mt19937_64 rng(9);
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    Eigen::MatrixXd mat(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) mat(i, j) = expo(rng);
    }
    mat /= mat.sum();
    auto joint = JointDistribution::Create(mat).value();
    for (Order o : {Order::One(), Nu(2.0), Nu(5.0), Order::Infinity()}) {
      EXPECT_GE(ArimotoMutualInformation(joint, o, Axis::kRows), -1e-12);
    }
    EXPECT_NEAR(ArimotoMutualInformation(joint, Order::Infinity(), Axis::kCols),
                std::log2(CondGuessProb(joint, Axis::kCols) /
                          GuessProb(joint, Axis::kCols)),
                1e-12);
  }
}

}  // namespace
}  // namespace pguess
