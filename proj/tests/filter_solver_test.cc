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

#include "pguess/filter_solver.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace pguess {
namespace {

using ::pguess::testing::BinaryFilterGridSearch;
using ::pguess::testing::NaivePrivacy;
using ::pguess::testing::NaiveUtility;
using ::pguess::testing::RandomJoint;
using ::pguess::testing::ToRows;

JointDistribution BscJoint() {
  return JointDistribution::FromRows({{0.32, 0.08}, {0.12, 0.48}}).value();
}

double H(const JointDistribution& joint, double eps) {
  auto sol = SolvePrivacyAwareGuessing(joint, eps);
  EXPECT_TRUE(sol.ok()) << sol.status();
  return sol.ok() ? sol->utility : -1.0;
}

TEST(SolvePrivacyAwareGuessingTest, BscJointValues) {
  EXPECT_NEAR(H(BscJoint(), 0.7), 0.86, 1e-7);
  EXPECT_NEAR(H(BscJoint(), 0.6), 0.72, 1e-7);
  auto top = SolvePrivacyAwareGuessing(BscJoint(), 0.8);
  ASSERT_TRUE(top.ok());
  EXPECT_DOUBLE_EQ(top->utility, 1.0);
  EXPECT_TRUE(top->saturated);
  auto above = SolvePrivacyAwareGuessing(BscJoint(), 0.95);
  ASSERT_TRUE(above.ok());
  EXPECT_TRUE(above->saturated);
  EXPECT_DOUBLE_EQ(above->privacy, 0.8);
}

TEST(SolvePrivacyAwareGuessingTest, PerfectPrivacyMatchesDenseGrid) {
  const double grid = BinaryFilterGridSearch(ToRows(BscJoint().matrix()), 0.6, 401);
  EXPECT_NEAR(grid, 0.72, 1e-9);
  EXPECT_GE(H(BscJoint(), 0.6), grid - 1e-9);
}

TEST(SolvePrivacyAwareGuessingTest, Errors) {
  EXPECT_EQ(SolvePrivacyAwareGuessing(BscJoint(), 0.55).status().code(),
            absl::StatusCode::kInvalidArgument);
  std::mt19937_64 rng(1);
  auto wide = JointDistribution::Create(RandomJoint(rng, 2, 7)).value();
  EXPECT_EQ(SolvePrivacyAwareGuessing(wide, 0.99).status().code(),
            absl::StatusCode::kResourceExhausted);
  GuessingSolverOptions tiny_budget;
  tiny_budget.num_outputs = 0;
  tiny_budget.max_programs = 1;
  EXPECT_EQ(SolvePrivacyAwareGuessing(BscJoint(), 0.7, tiny_budget).status().code(),
            absl::StatusCode::kResourceExhausted);
}

TEST(SolvePrivacyAwareGuessingTest, ToleratesThresholdJustBelowBlindGuess) {
  auto sol = SolvePrivacyAwareGuessing(BscJoint(), 0.6 - 1e-10);
  ASSERT_TRUE(sol.ok());
  EXPECT_DOUBLE_EQ(sol->threshold, 0.6);
  EXPECT_NEAR(sol->utility, 0.72, 1e-7);
}

TEST(SolvePrivacyAwareGuessingTest, ConstantFilterBoundAtPerfectPrivacy) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto joint = JointDistribution::Create(RandomJoint(rng, 3, 3)).value();
    EXPECT_GE(H(joint, GuessProb(joint, Axis::kRows)),
              GuessProb(joint, Axis::kCols) - 1e-9);
  }
}

// The returned filter is a genuine certificate: recomputing its performance
// with independent loops reproduces the reported numbers.
TEST(SolvePrivacyAwareGuessingTest, FilterIsACertificate) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
    auto joint =
        JointDistribution::Create(RandomJoint(rng, m, n, 0.15)).value();
    const double lo = GuessProb(joint, Axis::kRows);
    const double hi = CondGuessProb(joint, Axis::kRows);
    const double eps = lo + unit(rng) * (hi - lo);
    auto sol = SolvePrivacyAwareGuessing(joint, eps);
    ASSERT_TRUE(sol.ok()) << sol.status();
    const Eigen::MatrixXd& f = sol->filter.matrix();
    EXPECT_EQ(f.rows(), n);
    EXPECT_EQ(f.cols(), n + 1);
    for (int y = 0; y < n; ++y) {
      EXPECT_NEAR(f.row(y).sum(), 1.0, 1e-9);
      EXPECT_GE(f.row(y).minCoeff(), 0.0);
    }
    const auto rows = ToRows(joint.matrix());
    const auto filter = ToRows(f);
    EXPECT_NEAR(NaiveUtility(rows, filter), sol->utility, 1e-8);
    EXPECT_NEAR(NaivePrivacy(rows, filter), sol->privacy, 1e-8);
    EXPECT_LE(sol->privacy, eps + 1e-8);
    EXPECT_GE(sol->utility, GuessProb(joint, Axis::kCols) - 1e-9);
    EXPECT_LE(sol->utility, 1.0 + 1e-12);
  }
}

TEST(SolvePrivacyAwareGuessingTest, MonotoneConcaveAndSaturatesExactlyAtTop) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 2 + trial % 2, n = 2 + trial % 3;
    auto joint = JointDistribution::Create(RandomJoint(rng, m, n)).value();
    const double lo = GuessProb(joint, Axis::kRows);
    const double hi = CondGuessProb(joint, Axis::kRows);
    if (hi - lo < 1e-3) continue;
    constexpr int kPoints = 13;
    std::vector<double> h(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      h[i] = H(joint, lo + (hi - lo) * i / (kPoints - 1));
    }
    for (int i = 0; i + 1 < kPoints; ++i) EXPECT_LE(h[i], h[i + 1] + 1e-9);
    for (int i = 0; i + 2 < kPoints; ++i) {
      EXPECT_GE(h[i + 1], 0.5 * (h[i] + h[i + 2]) - 1e-8);
    }
    EXPECT_NEAR(h.back(), 1.0, 1e-8);
    EXPECT_LT(h[kPoints - 2], 1.0 - 1e-8);
  }
}

// Over binary-observation joints, no filter on a 41 x 41 grid of 2-output
// channels beats the solver.
TEST(SolvePrivacyAwareGuessingTest, NoGridFilterBeatsSolver) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 41; ++trial) {
    const int m = 2 + trial % 3;
    auto joint = JointDistribution::Create(RandomJoint(rng, m, 2)).value();
    const double lo = GuessProb(joint, Axis::kRows);
    const double hi = CondGuessProb(joint, Axis::kRows);
    const double eps = lo + unit(rng) * (hi - lo);
    const double grid = BinaryFilterGridSearch(ToRows(joint.matrix()), eps, 41);
    EXPECT_LE(grid, H(joint, eps) + 1e-6) << "trial " << trial;
  }
}

TEST(SolvePrivacyAwareGuessingTest, ExtraOutputsNeverHurt) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto joint = JointDistribution::Create(RandomJoint(rng, 3, 3)).value();
    const double eps = 0.5 * (GuessProb(joint, Axis::kRows) +
                              CondGuessProb(joint, Axis::kRows));
    GuessingSolverOptions few, many;
    few.num_outputs = 2;
    many.num_outputs = 5;
    auto a = SolvePrivacyAwareGuessing(joint, eps, few);
    auto b = SolvePrivacyAwareGuessing(joint, eps);
    auto c = SolvePrivacyAwareGuessing(joint, eps, many);
    ASSERT_TRUE(a.ok() && b.ok() && c.ok());
    EXPECT_LE(a->utility, b->utility + 1e-9);
    EXPECT_NEAR(b->utility, c->utility, 1e-8);
  }
}

TEST(GuessingRatePrivacyTest, Examples) {
  EXPECT_NEAR(GuessingRatePrivacy(BscJoint(), 0.0).value(), std::log2(0.72 / 0.56),
              1e-7);
  EXPECT_NEAR(GuessingRatePrivacy(BscJoint(), 0.0).value(), 0.3626, 1e-4);
  const double top = std::log2(0.8 / 0.6);
  EXPECT_NEAR(GuessingRatePrivacy(BscJoint(), top).value(), std::log2(1 / 0.56),
              1e-12);
  EXPECT_NEAR(GuessingRatePrivacy(BscJoint(), top + 3).value(),
              std::log2(1 / 0.56), 1e-12);
  auto same = JointDistribution::Diagonal(std::vector{0.5, 0.5}).value();
  EXPECT_NEAR(GuessingRatePrivacy(same, 0.0).value(), 0.0, 1e-9);
  EXPECT_FALSE(GuessingRatePrivacy(BscJoint(), -0.1).ok());
}

TEST(BoundOrderUtilityPrivacyTest, BscJointArguments) {
  const Order two = Order::Finite(2.0).value();
  auto b = BoundOrderUtilityPrivacy(BscJoint(), two, two, 0.5);
  ASSERT_TRUE(b.ok());
  const double h_inf_x = -std::log2(0.6);
  EXPECT_NEAR(b->upper_argument, 0.25 + 0.5 * h_inf_x, 1e-12);
  EXPECT_NEAR(b->upper_argument, 0.6185, 1e-4);
  const double h2_y = -std::log2(0.44 * 0.44 + 0.56 * 0.56);
  const double h_inf_y = -std::log2(0.56);
  EXPECT_NEAR(b->upper,
              GuessingRatePrivacy(BscJoint(), b->upper_argument).value() + h2_y -
                  h_inf_y,
              1e-12);
  // H_2(X) - H_inf(X) = 0.2064 < 0.5, so the lower bound applies.
  ASSERT_TRUE(b->lower.has_value());
  auto none = BoundOrderUtilityPrivacy(BscJoint(), two, two, 0.1);
  ASSERT_TRUE(none.ok());
  EXPECT_FALSE(none->lower.has_value());
}

TEST(BoundOrderUtilityPrivacyTest, UniformXCollapsesLowerArgument) {
  auto joint = JointDistribution::FromRows({{0.4, 0.1}, {0.15, 0.35}}).value();
  const Order three = Order::Finite(3.0).value();
  for (double eps : {0.0, 0.1, 0.4}) {
    auto b = BoundOrderUtilityPrivacy(joint, three, three, eps);
    ASSERT_TRUE(b.ok());
    ASSERT_TRUE(b->lower_argument.has_value());
    EXPECT_NEAR(*b->lower_argument, eps, 1e-12);
  }
}

TEST(BoundOrderUtilityPrivacyTest, RejectsNonFiniteOrders) {
  const Order two = Order::Finite(2.0).value();
  EXPECT_FALSE(
      BoundOrderUtilityPrivacy(BscJoint(), Order::One(), two, 0.5).ok());
  EXPECT_FALSE(
      BoundOrderUtilityPrivacy(BscJoint(), two, Order::Infinity(), 0.5).ok());
}

TEST(BoundOrderUtilityPrivacyTest, UpperDominatesLower) {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> order(1.05, 8.0);
  std::uniform_real_distribution<double> budget(0.0, 1.5);
  int applicable = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + trial % 2, n = 2 + (trial / 2) % 2;
    auto joint = JointDistribution::Create(RandomJoint(rng, m, n)).value();
    const Order nu = Order::Finite(order(rng)).value();
    const Order mu = Order::Finite(order(rng)).value();
    auto b = BoundOrderUtilityPrivacy(joint, nu, mu, budget(rng));
    ASSERT_TRUE(b.ok()) << b.status();
    if (!b->lower) continue;
    ++applicable;
    EXPECT_GE(b->upper, *b->lower - 1e-9) << "trial " << trial;
  }
  EXPECT_GT(applicable, 200);
}

}  // namespace
}  // namespace pguess
