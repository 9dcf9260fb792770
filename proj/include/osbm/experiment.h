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

#ifndef OSBM_EXPERIMENT_H_
#define OSBM_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "osbm/offline.h"
#include "osbm/online.h"
#include "osbm/problem.h"

namespace osbm {

enum class OfflineSolver { kLp, kContinuousGreedy };

std::string_view OfflineSolverName(OfflineSolver solver);  // lp, greedy
std::optional<OfflineSolver> ParseOfflineSolver(std::string_view name);

// Offline phase for one configuration: the epigraph LP optimum restricted to
// the edge columns, or continuous greedy.
SolutionArtifact SolveOffline(const Problem& problem, OfflineSolver solver,
                              const ContinuousGreedyOptions& options);

struct ExperimentPlan {
  std::vector<AlgorithmKind> algorithms;
  std::vector<int> b_values;
  std::vector<int> etas = {1};
  int trials = 500;
  uint64_t seed = 0;
  int workers = 1;
  BenchmarkKind benchmark = BenchmarkKind::kLp;
  OfflineSolver solver = OfflineSolver::kLp;
  ContinuousGreedyOptions greedy;
  AlgorithmOptions algorithm;
};

// Empty when the plan is runnable.
std::vector<std::string> ValidatePlan(const ExperimentPlan& plan);

// Number of equal-width buckets in the coverage histogram.
inline constexpr int kCoverageBuckets = 10;

struct ExperimentCell {
  AlgorithmKind algorithm = AlgorithmKind::kMmp;
  int b = 0;
  int eta = 1;
  RunMetrics metrics;
  // Set when the cell failed; the sweep continues.
  std::string error;
  // Users per coverage bucket (coverage objectives only); bucket i holds
  // online types whose mean covered share of coverable weight lies in
  // [i / 10, (i + 1) / 10), the last bucket including 1.
  std::vector<int> coverage_histogram;
};

struct ExperimentReport {
  std::vector<ExperimentCell> cells;
};

// For each (eta, b): re-solve offline with capacity b, then simulate every
// algorithm with the same trial seeds. Cells run in plan order: eta outer, b
// middle, algorithm inner.
ExperimentReport RunExperiment(const Problem& problem,
                               const ExperimentPlan& plan);

// Metrics CSV plus a trailing `error` column.
void WriteExperimentCsv(const ExperimentReport& report, std::ostream& out);
// Columns: algorithm,objective,b,eta,bucket_low,bucket_high,users.
void WriteCoverageHistogramCsv(const ExperimentReport& report,
                               std::ostream& out);

// Covered share of coverable weight per online type for one matched set.
// Coverable weight is the total genre weight of the user for per-user
// coverage and the weight of all features reachable through the type's edges
// for plain coverage. Types with no coverable weight get share 0.
std::vector<double> CoverageShares(const Instance& instance,
                                   const Objective& f,
                                   std::span<const int> matched);

}  // namespace osbm

#endif  // OSBM_EXPERIMENT_H_
