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

#include "osbm/experiment.h"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "osbm/random.h"
#include "test_util.h"

namespace osbm {
namespace {

const std::vector<AlgorithmKind> kAllAlgorithms = {
    AlgorithmKind::kMmp, AlgorithmKind::kCr, AlgorithmKind::kGreedy,
    AlgorithmKind::kNegCr};

Problem SmallCoverageProblem(bool integral_rates) {
  Rng rng(13);
  testing::SuiteOptions suite;
  suite.integral_rates = integral_rates;
  suite.horizon = 8;
  suite.max_degree = 3;
  return testing::RandomProblem(ObjectiveKind::kCoverage, suite, rng);
}

ExperimentPlan SweepPlan() {
  ExperimentPlan plan;
  plan.algorithms = kAllAlgorithms;
  plan.b_values = {1, 2, 3, 5, 10, 15};
  plan.trials = 50;
  plan.seed = 4;
  return plan;
}

std::string Csv(const ExperimentReport& report) {
  std::ostringstream out;
  WriteExperimentCsv(report, out);
  return out.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(ExperimentTest, SweepProducesOneRowPerCell) {
  const Problem problem = SmallCoverageProblem(true);
  const ExperimentReport report = RunExperiment(problem, SweepPlan());
  ASSERT_EQ(report.cells.size(), 24u);
  for (const ExperimentCell& cell : report.cells) {
    EXPECT_TRUE(cell.error.empty()) << cell.error;
    EXPECT_EQ(cell.metrics.b, cell.b);
    EXPECT_EQ(cell.metrics.trials, 50);
  }
  const std::vector<std::string> lines = Lines(Csv(report));
  ASSERT_EQ(lines.size(), 25u);
  EXPECT_EQ(lines[0],
            "algorithm,objective,b,eta,trials,mean,std_error,benchmark_kind,"
            "benchmark_value,ratio,error");
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields;
    std::stringstream split(lines[i]);
    for (std::string field; std::getline(split, field, ',');) fields.push_back(field);
    ASSERT_GE(fields.size(), 10u);
    EXPECT_DOUBLE_EQ(std::stod(fields[5]) / std::stod(fields[8]),
                     std::stod(fields[9]));
  }
}

TEST(ExperimentTest, EtaListMultipliesRows) {
  const Problem problem = SmallCoverageProblem(true);
  ExperimentPlan plan = SweepPlan();
  plan.b_values = {1, 2};
  plan.etas = {1, 2};
  plan.algorithms = {AlgorithmKind::kMmp, AlgorithmKind::kGreedy};
  const ExperimentReport report = RunExperiment(problem, plan);
  ASSERT_EQ(report.cells.size(), 8u);
  EXPECT_EQ(report.cells[0].eta, 1);
  EXPECT_EQ(report.cells[7].eta, 2);
  EXPECT_EQ(report.cells[7].metrics.eta, 2);
}

TEST(ExperimentTest, RejectsInvalidPlans) {
  ExperimentPlan plan = SweepPlan();
  plan.trials = 0;
  EXPECT_FALSE(ValidatePlan(plan).empty());
  EXPECT_THROW(RunExperiment(SmallCoverageProblem(true), plan),
               std::invalid_argument);
  plan = SweepPlan();
  plan.b_values = {0};
  EXPECT_FALSE(ValidatePlan(plan).empty());
  plan = SweepPlan();
  plan.algorithms.clear();
  EXPECT_FALSE(ValidatePlan(plan).empty());
  EXPECT_TRUE(ValidatePlan(SweepPlan()).empty());
}

TEST(ExperimentTest, SamePlanGivesIdenticalBytes) {
  const Problem problem = SmallCoverageProblem(true);
  ExperimentPlan plan = SweepPlan();
  const std::string first = Csv(RunExperiment(problem, plan));
  plan.workers = 3;
  EXPECT_EQ(Csv(RunExperiment(problem, plan)), first);
}

TEST(ExperimentTest, FailedCellIsRecordedAndRunContinues) {
  const Problem problem = SmallCoverageProblem(false);
  ExperimentPlan plan = SweepPlan();
  plan.b_values = {1};
  const ExperimentReport report = RunExperiment(problem, plan);
  ASSERT_EQ(report.cells.size(), 4u);
  for (const ExperimentCell& cell : report.cells) {
    if (cell.algorithm == AlgorithmKind::kCr) {
      EXPECT_FALSE(cell.error.empty());
    } else {
      EXPECT_TRUE(cell.error.empty()) << cell.error;
    }
  }
  const std::vector<std::string> lines = Lines(Csv(report));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[2].rfind("cr,coverage,1,1,0,", 0), 0u) << lines[2];
}

TEST(ExperimentTest, CoverageHistogramCountsEveryUser) {
  const Problem problem = SmallCoverageProblem(true);
  ExperimentPlan plan = SweepPlan();
  plan.b_values = {1, 3};
  const ExperimentReport report = RunExperiment(problem, plan);
  for (const ExperimentCell& cell : report.cells) {
    ASSERT_EQ(cell.coverage_histogram.size(), static_cast<size_t>(kCoverageBuckets));
    EXPECT_EQ(std::accumulate(cell.coverage_histogram.begin(),
                              cell.coverage_histogram.end(), 0),
              problem.instance.num_online());
  }
  std::ostringstream out;
  WriteCoverageHistogramCsv(report, out);
  EXPECT_EQ(Lines(out.str()).size(), 1u + report.cells.size() * kCoverageBuckets);
}

TEST(ExperimentTest, NoHistogramForAdditiveObjectives) {
  Rng rng(2);
  const Problem problem =
      testing::RandomProblem(ObjectiveKind::kBudgetAdditive, {}, rng);
  ExperimentPlan plan = SweepPlan();
  plan.b_values = {1};
  for (const ExperimentCell& cell : RunExperiment(problem, plan).cells) {
    EXPECT_TRUE(cell.coverage_histogram.empty());
  }
}

TEST(CoverageSharesTest, FullAndPartialShares) {
  // v0 reaches features {0, 1} through two edges; v1 reaches {2}.
  const Instance instance =
      testing::MakeInstance(2, {1.0, 1.0}, {{0, 0}, {1, 0}, {0, 1}}, 2);
  const Objective f = Objective::Coverage({{0}, {1}, {2}}, {1.0, 3.0, 2.0});
  const std::vector<int> matched = {1};
  const std::vector<double> shares = CoverageShares(instance, f, matched);
  EXPECT_DOUBLE_EQ(shares[0], 0.75);
  EXPECT_DOUBLE_EQ(shares[1], 0.0);
  EXPECT_THROW(CoverageShares(instance, Objective::Linear({1, 1, 1}), matched),
               std::invalid_argument);
}

TEST(SolveOfflineTest, LpAndGreedyAgreeOnLinear) {
  Rng rng(6);
  const Problem problem = testing::RandomProblem(ObjectiveKind::kLinear, {}, rng);
  ContinuousGreedyOptions options;
  options.steps = 10;
  const SolutionArtifact lp = SolveOffline(problem, OfflineSolver::kLp, options);
  const SolutionArtifact greedy =
      SolveOffline(problem, OfflineSolver::kContinuousGreedy, options);
  EXPECT_EQ(lp.solver, "lp");
  EXPECT_EQ(greedy.solver, "continuous-greedy");
  EXPECT_NEAR(lp.value.value, greedy.value.value, 1e-6);
  EXPECT_EQ(ParseOfflineSolver(OfflineSolverName(OfflineSolver::kLp)),
            OfflineSolver::kLp);
  EXPECT_EQ(ParseOfflineSolver("continuous-greedy"),
            OfflineSolver::kContinuousGreedy);
}

}  // namespace
}  // namespace osbm
