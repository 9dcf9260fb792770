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

#include "osbm/objective.h"

#include <algorithm>
#include <vector>

#include "gtest/gtest.h"
#include "osbm/random.h"

namespace osbm {
namespace {

Objective TwoSetCoverage() {
  // A_e1 = {1, 2}, A_e2 = {2, 3} with unit weights over features 0..3.
  return Objective::Coverage({{1, 2}, {2, 3}}, {1.0, 1.0, 1.0, 1.0});
}

std::vector<Objective> SampleObjectives(Rng& rng, int m) {
  std::vector<double> weights(m);
  for (double& w : weights) w = rng.Uniform() * 3;
  std::vector<std::vector<int>> features(m);
  for (auto& set : features) set = rng.SampleWithoutReplacement(8, rng.UniformInt(0, 4));
  std::vector<double> feature_weights(8);
  for (double& w : feature_weights) w = rng.Uniform();
  std::vector<int> owner(m);
  for (int e = 0; e < m; ++e) owner[e] = e % 3;
  std::vector<std::vector<double>> user_weights(3, std::vector<double>(8));
  for (auto& row : user_weights) {
    for (double& w : row) w = rng.Uniform();
  }
  return {Objective::Linear(weights), Objective::BudgetAdditive(weights, 4.0),
          Objective::Coverage(features, feature_weights),
          Objective::PerUserCoverage(features, owner, user_weights)};
}

TEST(ObjectiveTest, BudgetAdditiveClampsAtBudget) {
  const Objective f = Objective::BudgetAdditive({3.0, 4.0}, 5.0);
  const std::vector<int> both = {0, 1};
  EXPECT_DOUBLE_EQ(f.Eval(both), 5.0);
  EXPECT_DOUBLE_EQ(f.Eval(std::vector<int>{0}), 3.0);
}

TEST(ObjectiveTest, CoverageCountsUnion) {
  EXPECT_DOUBLE_EQ(TwoSetCoverage().Eval(std::vector<int>{0, 1}), 3.0);
}

TEST(ObjectiveTest, EmptySetIsZero) {
  Rng rng(1);
  for (const Objective& f : SampleObjectives(rng, 6)) {
    EXPECT_EQ(f.Eval(std::vector<int>{}), 0.0);
  }
}

TEST(ObjectiveTest, UnknownEdgeThrows) {
  const Objective f = Objective::Linear({1.0, 2.0});
  EXPECT_THROW(f.Eval(std::vector<int>{2}), std::out_of_range);
  EXPECT_THROW(f.Eval(std::vector<int>{-1}), std::out_of_range);
}

TEST(ObjectiveTest, PerUserCoverageSumsUsers) {
  // Edges 0 and 1 belong to user 0, edge 2 to user 1; both users value
  // feature 0 only at their own weight.
  const Objective f = Objective::PerUserCoverage(
      {{0}, {0, 1}, {0}}, {0, 0, 1}, {{2.0, 0.5}, {3.0, 1.0}});
  EXPECT_DOUBLE_EQ(f.Eval(std::vector<int>{0, 1}), 2.5);
  EXPECT_DOUBLE_EQ(f.Eval(std::vector<int>{0, 2}), 5.0);
}

TEST(MarginalGainTest, LinearGainIsWeight) {
  const Objective f = Objective::Linear({1.5, 2.0, 0.5});
  EXPECT_DOUBLE_EQ(f.MarginalGain(std::vector<int>{}, 1), 2.0);
  EXPECT_DOUBLE_EQ(f.MarginalGain(std::vector<int>{0, 2}, 1), 2.0);
}

TEST(MarginalGainTest, SaturatedBudgetGivesZero) {
  const Objective f = Objective::BudgetAdditive({3.0, 4.0, 1.0}, 5.0);
  EXPECT_DOUBLE_EQ(f.MarginalGain(std::vector<int>{0, 1}, 2), 0.0);
}

TEST(MarginalGainTest, CoverageGainCountsNewFeatures) {
  EXPECT_DOUBLE_EQ(TwoSetCoverage().MarginalGain(std::vector<int>{0}, 1), 1.0);
}

TEST(MarginalGainTest, EdgeAlreadyInSetThrows) {
  EXPECT_THROW(TwoSetCoverage().MarginalGain(std::vector<int>{0}, 0),
               std::invalid_argument);
}

TEST(ObjectiveTest, RandomizedSubmodularityAudit) {
  Rng rng(7);
  constexpr int kEdges = 10;
  for (const Objective& f : SampleObjectives(rng, kEdges)) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<int> big;
      std::vector<int> small;
      const int e = rng.UniformInt(0, kEdges - 1);
      for (int j = 0; j < kEdges; ++j) {
        if (j == e) continue;
        if (rng.Bernoulli(0.5)) {
          big.push_back(j);
          if (rng.Bernoulli(0.5)) small.push_back(j);
        }
      }
      const double gain_small = f.MarginalGain(small, e);
      const double gain_big = f.MarginalGain(big, e);
      EXPECT_GE(gain_big, -1e-12);
      EXPECT_GE(gain_small, gain_big - 1e-12)
          << ObjectiveKindName(f.kind());
    }
  }
}

TEST(ObjectiveStateTest, IncrementalMatchesRecompute) {
  Rng rng(8);
  constexpr int kEdges = 9;
  for (const Objective& f : SampleObjectives(rng, kEdges)) {
    ObjectiveState state(f);
    std::vector<int> current;
    for (int step = 0; step < 200; ++step) {
      const int e = rng.UniformInt(0, kEdges - 1);
      const auto it = std::find(current.begin(), current.end(), e);
      if (it == current.end()) {
        EXPECT_NEAR(state.Gain(e), f.MarginalGain(current, e), 1e-9);
        state.Add(e);
        current.push_back(e);
      } else {
        state.Remove(e);
        current.erase(it);
      }
      EXPECT_NEAR(state.value(), f.Eval(current), 1e-9);
    }
    state.Clear();
    EXPECT_EQ(state.value(), 0.0);
  }
}

TEST(ObjectiveStateTest, DuplicateAddIsNoOpAndRemoveRequiresMembership) {
  const Objective f = Objective::Linear({1.0, 2.0});
  ObjectiveState state(f);
  state.Add(1);
  state.Add(1);
  EXPECT_DOUBLE_EQ(state.value(), 2.0);
  EXPECT_TRUE(state.Contains(1));
  state.Remove(1);
  EXPECT_TRUE(state.Contains(1));
  state.Remove(1);
  EXPECT_FALSE(state.Contains(1));
  EXPECT_THROW(state.Remove(1), std::logic_error);
}

TEST(ObjectiveTest, PairedGainsMatchDefinition) {
  Rng rng(9);
  constexpr int kEdges = 8;
  for (const Objective& f : SampleObjectives(rng, kEdges)) {
    std::vector<uint8_t> indicator(kEdges);
    for (auto& bit : indicator) bit = rng.Bernoulli(0.5);
    std::vector<double> gains(kEdges);
    f.PairedGains(indicator, gains);
    for (int e = 0; e < kEdges; ++e) {
      std::vector<uint8_t> with = indicator, without = indicator;
      with[e] = 1;
      without[e] = 0;
      EXPECT_NEAR(gains[e], f.EvalIndicator(with) - f.EvalIndicator(without),
                  1e-9);
    }
  }
}

TEST(ObjectiveTest, KindNamesRoundTrip) {
  for (ObjectiveKind kind :
       {ObjectiveKind::kLinear, ObjectiveKind::kCoverage,
        ObjectiveKind::kBudgetAdditive, ObjectiveKind::kPerUserCoverage}) {
    EXPECT_EQ(ParseObjectiveKind(ObjectiveKindName(kind)), kind);
  }
  EXPECT_FALSE(ParseObjectiveKind("quadratic").has_value());
}

TEST(ObjectiveTest, RejectsBadParameters) {
  EXPECT_THROW(Objective::Linear({-1.0}), std::invalid_argument);
  EXPECT_THROW(Objective::BudgetAdditive({1.0}, -1.0), std::invalid_argument);
  EXPECT_THROW(Objective::Coverage({{4}}, {1.0, 1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace osbm
