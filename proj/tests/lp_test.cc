// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osbm/lp.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "osbm/random.h"
#include "rational_lp.h"
#include "test_util.h"

namespace osbm {
namespace {

using ::osbm::testing::MakeInstance;

TEST(SolveTest, BoxMaximum) {
  LinearProgram lp;
  lp.AddColumn(1.0, kInfinity);
  lp.AddColumn(1.0, kInfinity);
  lp.constraints.push_back({{{0, 1.0}}, 1.0});
  lp.constraints.push_back({{{1, 1.0}}, 1.0});
  const LpSolution solution = Solve(lp);
  ASSERT_EQ(solution.status, LpStatus::kOptimal);
  EXPECT_NEAR(solution.objective, 2.0, 1e-12);
  EXPECT_TRUE(AuditSolution(lp, solution).empty());
}

TEST(SolveTest, StarPicksLargerWeight) {
  const Instance instance = MakeInstance(1, {1.0, 1.0}, {{0, 0}, {0, 1}}, 2);
  const std::vector<double> weights = {2.0, 3.0};
  const LpSolution solution = Solve(BuildMatchingLmo(instance, weights));
  ASSERT_EQ(solution.status, LpStatus::kOptimal);
  EXPECT_NEAR(solution.objective, 3.0, 1e-12);
  EXPECT_NEAR(solution.x[0], 0.0, 1e-12);
  EXPECT_NEAR(solution.x[1], 1.0, 1e-12);
}

TEST(SolveTest, HalfRatesSplitTheStar) {
  // Vertices of {x1 <= .5, x2 <= .5, x1 + x2 <= 1}: the optimum is (.5, .5).
  const Instance instance = MakeInstance(1, {0.5, 0.5}, {{0, 0}, {0, 1}}, 2);
  const std::vector<double> weights = {2.0, 3.0};
  const LpSolution solution = Solve(BuildMatchingLmo(instance, weights));
  EXPECT_NEAR(solution.objective, 2.5, 1e-12);
  EXPECT_NEAR(solution.x[0], 0.5, 1e-12);
  EXPECT_NEAR(solution.x[1], 0.5, 1e-12);
}

TEST(SolveTest, NegativeRhsNeedsPhaseOne) {
  // max x1 s.t. -x1 <= -1 (x1 >= 1), x1 + x2 <= 3, x2 >= 1 via -x2 <= -1.
  LinearProgram lp;
  lp.AddColumn(1.0, kInfinity);
  lp.AddColumn(0.0, kInfinity);
  lp.constraints.push_back({{{0, -1.0}}, -1.0});
  lp.constraints.push_back({{{0, 1.0}, {1, 1.0}}, 3.0});
  lp.constraints.push_back({{{1, -1.0}}, -1.0});
  const LpSolution solution = Solve(lp);
  ASSERT_EQ(solution.status, LpStatus::kOptimal);
  EXPECT_NEAR(solution.objective, 2.0, 1e-12);
  EXPECT_TRUE(AuditSolution(lp, solution).empty());
}

TEST(SolveTest, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible;
  infeasible.AddColumn(1.0, 1.0);
  infeasible.constraints.push_back({{{0, -1.0}}, -2.0});
  EXPECT_EQ(Solve(infeasible).status, LpStatus::kInfeasible);

  LinearProgram unbounded;
  unbounded.AddColumn(1.0, kInfinity);
  unbounded.AddColumn(0.0, kInfinity);
  unbounded.constraints.push_back({{{0, 1.0}, {1, -1.0}}, 1.0});
  EXPECT_EQ(Solve(unbounded).status, LpStatus::kUnbounded);
}

TEST(SolveTest, DualsCertifyOptimality) {
  Rng rng(3);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = testing::RandomSmallLp(rng);
    const LpSolution solution = Solve(lp);
    if (solution.status != LpStatus::kOptimal) continue;
    ++checked;
    EXPECT_TRUE(AuditSolution(lp, solution).empty());
  }
  EXPECT_GT(checked, 50);
}

TEST(SolveTest, PricingRulesAgree) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = testing::RandomSmallLp(rng);
    const LpSolution dantzig = Solve(lp, {PricingRule::kDantzig});
    const LpSolution bland = Solve(lp, {PricingRule::kBland});
    ASSERT_EQ(dantzig.status, bland.status);
    if (dantzig.status == LpStatus::kOptimal) {
      EXPECT_NEAR(dantzig.objective, bland.objective,
                  1e-9 * std::max(1.0, std::abs(bland.objective)));
    }
  }
}

TEST(SolveTest, MatchesRationalReference) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = testing::RandomSmallLp(rng);
    const LpSolution solution = Solve(lp);
    const testing::RationalResult reference = testing::SolveRational(lp);
    ASSERT_EQ(solution.status, reference.status) << "trial " << trial;
    if (reference.status == LpStatus::kOptimal) {
      const double exact = static_cast<double>(reference.objective);
      EXPECT_LE(std::abs(solution.objective - exact),
                1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST(SolveTest, Deterministic) {
  Rng rng(6);
  const LinearProgram lp = testing::RandomSmallLp(rng);
  const LpSolution a = Solve(lp);
  const LpSolution b = Solve(lp);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SolveTest, IterationLimitThrows) {
  LinearProgram lp;
  for (int j = 0; j < 5; ++j) lp.AddColumn(1.0 + j, 1.0);
  lp.constraints.push_back({{{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}}, 2.0});
  EXPECT_THROW(Solve(lp, {PricingRule::kBland, 1}), std::runtime_error);
}

TEST(MatchingLmoTest, NegativeWeightsGiveZero) {
  const Instance instance = MakeInstance(2, {1.0, 1.0}, {{0, 0}, {1, 1}, {0, 1}}, 2);
  const std::vector<double> weights = {-1.0, -0.5, -2.0};
  const LpSolution solution = Solve(BuildMatchingLmo(instance, weights));
  EXPECT_NEAR(solution.objective, 0.0, 1e-12);
  for (double x : solution.x) EXPECT_NEAR(x, 0.0, 1e-12);
}

TEST(MatchingLmoTest, CapacityBindsOnStar) {
  const Instance instance =
      MakeInstance(1, {1.0, 1.0, 1.0}, {{0, 0}, {0, 1}, {0, 2}}, 3);
  const std::vector<double> weights(3, 1.0);
  EXPECT_NEAR(Solve(BuildMatchingLmo(instance, weights)).objective, 1.0, 1e-12);
}

TEST(MatchingLmoTest, PerfectMatchingTakesEveryEdge) {
  const Instance instance = testing::PerfectMatching(10);
  const std::vector<double> weights(10, 1.0);
  const LpSolution solution = Solve(BuildMatchingLmo(instance, weights));
  EXPECT_NEAR(solution.objective, 10.0, 1e-12);
  for (double x : solution.x) EXPECT_NEAR(x, 1.0, 1e-12);
}

TEST(MatchingLmoTest, RowsFollowEtaAndCapacity) {
  const Instance instance =
      MakeInstance(2, {0.5}, {{0, 0}, {1, 0}}, 4, /*eta=*/3, {2, 5});
  const std::vector<double> weights = {1.0, 1.0};
  const LinearProgram lp = BuildMatchingLmo(instance, weights);
  ASSERT_EQ(lp.num_rows(), 3);
  EXPECT_DOUBLE_EQ(lp.constraints[0].rhs, 1.5);
  EXPECT_DOUBLE_EQ(lp.constraints[1].rhs, 2.0);
  EXPECT_DOUBLE_EQ(lp.constraints[2].rhs, 5.0);
  EXPECT_DOUBLE_EQ(lp.upper[0], 1.0);
}

TEST(SpecialLpTest, BudgetAdditiveCapsAtBudget) {
  const Instance instance = MakeInstance(2, {1.0}, {{0, 0}, {1, 0}}, 1);
  const Objective f = Objective::BudgetAdditive({3.0, 4.0}, 2.5);
  const LpSolution solution = Solve(BuildSpecialLp(instance, f));
  EXPECT_NEAR(solution.objective, 2.5, 1e-12);
  const Objective loose = Objective::BudgetAdditive({3.0, 4.0}, 10.0);
  EXPECT_NEAR(Solve(BuildSpecialLp(instance, loose)).objective, 4.0, 1e-12);
}

TEST(SpecialLpTest, CoverageEpigraph) {
  // x <= 0.5 on both edges; gamma_1 <= x1, gamma_2 <= x1 + x2, gamma_3 <= x2
  // gives 0.5 + 1 + 0.5.
  const Instance instance = MakeInstance(2, {0.5, 0.5}, {{0, 0}, {1, 1}}, 2);
  const Objective f = Objective::Coverage({{1, 2}, {2, 3}}, {1.0, 1.0, 1.0, 1.0});
  const LinearProgram lp = BuildSpecialLp(instance, f);
  const LpSolution solution = Solve(lp);
  EXPECT_NEAR(solution.objective, 2.0, 1e-12);
  EXPECT_TRUE(AuditSolution(lp, solution).empty());
}

TEST(SpecialLpTest, PerUserCoverageMatchesManualValue) {
  // One user with r = 1 and two movies sharing genre 0; genre 1 only on
  // movie 1. The user can take one movie in total: best is movie 1 (2 + 1).
  const Instance instance = MakeInstance(2, {1.0}, {{0, 0}, {1, 0}}, 1);
  const Objective f = Objective::PerUserCoverage({{0}, {0, 1}}, {0, 0}, {{2.0, 1.0}});
  EXPECT_NEAR(Solve(BuildSpecialLp(instance, f)).objective, 3.0, 1e-12);
}

TEST(SpecialLpTest, LinearEqualsLmo) {
  const Instance instance = MakeInstance(1, {1.0, 1.0}, {{0, 0}, {0, 1}}, 2);
  const Objective f = Objective::Linear({2.0, 3.0});
  EXPECT_NEAR(Solve(BuildSpecialLp(instance, f)).objective, 3.0, 1e-12);
}

TEST(SpecialLpTest, RejectsMismatchedObjective) {
  const Instance instance = MakeInstance(1, {1.0}, {{0, 0}}, 1);
  EXPECT_THROW(BuildSpecialLp(instance, Objective::Linear({1.0, 2.0})),
               std::invalid_argument);
}

TEST(MatchingPolytopeTest, ReportsViolatedRows) {
  const Instance instance = MakeInstance(1, {0.5, 1.0}, {{0, 0}, {0, 1}}, 2);
  EXPECT_TRUE(CheckMatchingPolytope(instance, std::vector<double>{0.5, 0.5}).empty());
  EXPECT_FALSE(CheckMatchingPolytope(instance, std::vector<double>{0.6, 0.2}).empty());
  EXPECT_FALSE(CheckMatchingPolytope(instance, std::vector<double>{0.5, 0.6}).empty());
}

TEST(WriteMpsTest, LayoutAndPrecision) {
  LinearProgram lp;
  lp.AddColumn(0.1, 1.0);
  lp.AddColumn(1.0, kInfinity);
  lp.constraints.push_back({{{0, 1.0 / 3.0}, {1, 1.0}}, 2.0});
  std::ostringstream out;
  WriteMps(lp, "demo", out);
  const std::string text = out.str();
  EXPECT_NE(text.find("OBJSENSE\n    MAX"), std::string::npos);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos);
  EXPECT_NE(text.find(" UP BND       C0000001  1"), std::string::npos);
  EXPECT_NE(text.find(" PL BND       C0000002"), std::string::npos);
  EXPECT_NE(text.find("ENDATA"), std::string::npos);
}

}  // namespace
}  // namespace osbm
