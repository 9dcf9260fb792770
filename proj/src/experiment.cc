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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osbm/lp.h"
#include "osbm/random.h"

namespace osbm {
namespace {

bool IsCoverage(ObjectiveKind kind) {
  return kind == ObjectiveKind::kCoverage ||
         kind == ObjectiveKind::kPerUserCoverage;
}

std::string CsvField(std::string text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c == '\n' ? ' ' : c;
  }
  return quoted + "\"";
}

}  // namespace

std::string_view OfflineSolverName(OfflineSolver solver) {
  return solver == OfflineSolver::kLp ? "lp" : "greedy";
}

std::optional<OfflineSolver> ParseOfflineSolver(std::string_view name) {
  if (name == "lp") return OfflineSolver::kLp;
  if (name == "greedy" || name == "continuous-greedy") {
    return OfflineSolver::kContinuousGreedy;
  }
  return std::nullopt;
}

SolutionArtifact SolveOffline(const Problem& problem, OfflineSolver solver,
                              const ContinuousGreedyOptions& options) {
  SolutionArtifact artifact;
  if (solver == OfflineSolver::kLp) {
    const LpSolution solution =
        Solve(BuildSpecialLp(problem.instance, problem.objective), options.lp);
    if (solution.status != LpStatus::kOptimal) {
      throw std::runtime_error("offline LP did not solve");
    }
    artifact.solver = "lp";
    artifact.x.assign(solution.x.begin(),
                      solution.x.begin() + problem.instance.num_edges());
    for (double& value : artifact.x) value = std::clamp(value, 0.0, 1.0);
    artifact.value = {solution.objective, 0.0};
    return artifact;
  }
  OfflineSolution solution =
      ContinuousGreedy(problem.objective, problem.instance, options);
  artifact.solver = "continuous-greedy";
  artifact.x = std::move(solution.x);
  artifact.value = solution.value;
  artifact.steps = solution.steps;
  artifact.grad_samples = solution.grad_samples;
  artifact.seed = solution.seed;
  return artifact;
}

std::vector<std::string> ValidatePlan(const ExperimentPlan& plan) {
  std::vector<std::string> problems;
  if (plan.algorithms.empty()) problems.push_back("no algorithms listed");
  if (plan.b_values.empty()) problems.push_back("no b values listed");
  for (int b : plan.b_values) {
    if (b < 1) problems.push_back("b values must be positive");
  }
  if (plan.etas.empty()) problems.push_back("no eta values listed");
  for (int eta : plan.etas) {
    if (eta < 1) problems.push_back("eta values must be positive");
  }
  if (plan.trials < 1) problems.push_back("trials must be positive");
  if (plan.workers < 1) problems.push_back("workers must be positive");
  return problems;
}

std::vector<double> CoverageShares(const Instance& instance,
                                   const Objective& f,
                                   std::span<const int> matched) {
  if (!IsCoverage(f.kind())) {
    throw std::invalid_argument("coverage shares need a coverage objective");
  }
  const int n = instance.num_online();
  std::vector<double> shares(n, 0.0);
  std::vector<uint8_t> covered(f.num_cover_elements(), 0);
  std::vector<uint8_t> coverable(f.num_cover_elements(), 0);
  std::vector<std::vector<int>> matched_at(n);
  for (int e : matched) matched_at[instance.edge(e).v].push_back(e);
  std::vector<int> touched;
  for (int v = 0; v < n; ++v) {
    double total = 0.0;
    if (f.kind() == ObjectiveKind::kPerUserCoverage) {
      for (double w : f.user_feature_weights()[v]) total += w;
    } else {
      for (int e : instance.online_edges(v)) {
        for (int z : f.cover_set(e)) {
          if (!coverable[z]) {
            coverable[z] = 1;
            touched.push_back(z);
            total += f.cover_weight(z);
          }
        }
      }
    }
    double gained = 0.0;
    for (int e : matched_at[v]) {
      for (int z : f.cover_set(e)) {
        if (!covered[z]) {
          covered[z] = 1;
          touched.push_back(z);
          gained += f.cover_weight(z);
        }
      }
    }
    for (int z : touched) covered[z] = coverable[z] = 0;
    touched.clear();
    shares[v] = total > 0.0 ? std::min(1.0, gained / total) : 0.0;
  }
  return shares;
}

ExperimentReport RunExperiment(const Problem& problem,
                               const ExperimentPlan& plan) {
  const std::vector<std::string> plan_problems = ValidatePlan(plan);
  if (!plan_problems.empty()) throw std::invalid_argument(plan_problems[0]);
  const Objective& f = problem.objective;
  const bool coverage = IsCoverage(f.kind());
  ExperimentReport report;
  for (int eta : plan.etas) {
    for (int b : plan.b_values) {
      const Instance instance =
          problem.instance.WithUniformCapacity(b).WithEta(eta);
      SolutionArtifact offline;
      double benchmark = 0.0;
      std::string setup_error;
      try {
        ContinuousGreedyOptions greedy = plan.greedy;
        greedy.seed = DeriveSeed(plan.seed, 5);
        offline = SolveOffline({instance, f}, plan.solver, greedy);
        if (plan.benchmark == BenchmarkKind::kLp &&
            plan.solver == OfflineSolver::kLp) {
          benchmark = offline.value.value;
        } else {
          benchmark = ComputeBenchmark(plan.benchmark, instance, f, offline.x,
                                       DeriveSeed(plan.seed, 7));
        }
      } catch (const std::exception& error) {
        setup_error = error.what();
      }
      for (AlgorithmKind kind : plan.algorithms) {
        ExperimentCell cell;
        cell.algorithm = kind;
        cell.b = b;
        cell.eta = eta;
        cell.metrics.algorithm = std::string(AlgorithmName(kind));
        cell.metrics.objective = f.kind();
        cell.metrics.b = b;
        cell.metrics.eta = eta;
        cell.metrics.benchmark_kind = plan.benchmark;
        cell.error = setup_error;
        if (setup_error.empty()) {
          try {
            const auto algorithm =
                MakeAlgorithm(kind, instance, f, offline.x, plan.algorithm);
            std::vector<double> values(plan.trials);
            std::vector<std::vector<double>> shares(coverage ? plan.trials : 0);
            ForEachTrial(*algorithm, instance, f, plan.trials, plan.seed,
                         plan.workers, [&](int t, const TrialResult& result) {
                           values[t] = result.value;
                           if (coverage) {
                             shares[t] = CoverageShares(instance, f, result.matched);
                           }
                         });
            cell.metrics = Summarize(cell.metrics.algorithm, instance, f,
                                     std::move(values), plan.benchmark,
                                     benchmark);
            if (coverage) {
              cell.coverage_histogram.assign(kCoverageBuckets, 0);
              for (int v = 0; v < instance.num_online(); ++v) {
                double mean = 0.0;
                for (const auto& trial : shares) mean += trial[v];
                mean /= plan.trials;
                const int bucket = std::min(
                    kCoverageBuckets - 1,
                    static_cast<int>(std::floor(mean * kCoverageBuckets)));
                ++cell.coverage_histogram[bucket];
              }
            }
          } catch (const std::exception& error) {
            cell.error = error.what();
          }
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

void WriteExperimentCsv(const ExperimentReport& report, std::ostream& out) {
  out << "algorithm,objective,b,eta,trials,mean,std_error,benchmark_kind,"
         "benchmark_value,ratio,error\n";
  for (const ExperimentCell& cell : report.cells) {
    const RunMetrics& m = cell.metrics;
    if (!cell.error.empty()) {
      out << m.algorithm << ',' << ObjectiveKindName(m.objective) << ','
          << cell.b << ',' << cell.eta << ",0,,," << BenchmarkName(m.benchmark_kind)
          << ",,," << CsvField(cell.error) << '\n';
      continue;
    }
    out << m.algorithm << ',' << ObjectiveKindName(m.objective) << ',' << m.b
        << ',' << m.eta << ',' << m.trials << ',' << FormatReal(m.mean) << ','
        << FormatReal(m.std_error) << ',' << BenchmarkName(m.benchmark_kind)
        << ',' << FormatReal(m.benchmark_value) << ',' << FormatReal(m.ratio)
        << ",\n";
  }
}

void WriteCoverageHistogramCsv(const ExperimentReport& report,
                               std::ostream& out) {
  out << "algorithm,objective,b,eta,bucket_low,bucket_high,users\n";
  for (const ExperimentCell& cell : report.cells) {
    for (int i = 0; i < static_cast<int>(cell.coverage_histogram.size()); ++i) {
      out << cell.metrics.algorithm << ','
          << ObjectiveKindName(cell.metrics.objective) << ',' << cell.b << ','
          << cell.eta << ',' << FormatReal(static_cast<double>(i) / kCoverageBuckets)
          << ',' << FormatReal(static_cast<double>(i + 1) / kCoverageBuckets)
          << ',' << cell.coverage_histogram[i] << '\n';
    }
  }
}

}  // namespace osbm
