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

// Command-line front end: generate or ingest an instance, solve the offline
// program, simulate online algorithms and sweep experiment grids.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "osbm/experiment.h"
#include "osbm/offline.h"
#include "osbm/online.h"
#include "osbm/problem.h"
#include "osbm/random.h"
#include "osbm/ratings.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Raised for bad flag values and missing input files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void RequireFile(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw UsageError("no such file: " + path);
  }
}

// Loads the instance file, applies --b / --eta overrides and checks the
// --objective assertion.
osbm::Problem LoadForRun(const std::string& path, int b, int eta,
                         const std::string& objective) {
  RequireFile(path);
  osbm::Problem problem = osbm::LoadProblem(path);
  const std::vector<std::string> violations = osbm::ValidateProblem(problem);
  if (!violations.empty()) {
    throw std::runtime_error(path + ": " + violations.front());
  }
  if (!objective.empty()) {
    const auto kind = osbm::ParseObjectiveKind(objective);
    if (!kind) throw UsageError("unknown objective '" + objective + "'");
    if (*kind != problem.objective.kind()) {
      throw UsageError("instance objective is '" +
                       std::string(osbm::ObjectiveKindName(
                           problem.objective.kind())) +
                       "', not '" + objective + "'");
    }
  }
  if (b > 0) problem.instance = problem.instance.WithUniformCapacity(b);
  if (eta > 0) problem.instance = problem.instance.WithEta(eta);
  return problem;
}

template <typename T, typename Parse>
T ParseOrUsage(const std::string& text, Parse parse, const char* what) {
  const auto value = parse(text);
  if (!value) throw UsageError(std::string("unknown ") + what + " '" + text + "'");
  return *value;
}

void PrintSummary(const osbm::Instance& instance) {
  std::cout << "|U|=" << instance.num_offline()
            << " |V|=" << instance.num_online() << " m=" << instance.num_edges()
            << " T=" << instance.horizon() << '\n';
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online submodular bipartite matching under known i.i.d. arrivals"};
  app.require_subcommand(1);

  // generate
  std::string kind_name;
  uint64_t seed = 0;
  std::string out_path;
  int b = 0;
  int eta = 0;
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance");
  generate->add_option("--kind,--objective", kind_name,
                       "coverage or budget-additive")->required();
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--b", b, "Uniform offline capacity")->check(CLI::PositiveNumber);
  generate->add_option("--out", out_path, "Instance file to write")->required();

  // ingest
  std::string ratings_path;
  std::string genres_path;
  osbm::RatingsParams ratings;
  auto* ingest = app.add_subcommand("ingest", "Build an instance from ratings");
  ingest->add_option("--ratings", ratings_path, "user,movie,rating[,observed] rows")
      ->required();
  ingest->add_option("--genres", genres_path, "movie,genre rows")->required();
  ingest->add_option("--users", ratings.num_users, "Online users to keep")
      ->check(CLI::PositiveNumber);
  ingest->add_option("--movies", ratings.num_movies, "Movies to sample")
      ->check(CLI::PositiveNumber);
  ingest->add_option("--seed", ratings.seed, "Random seed");
  ingest->add_flag("--integral-rates", ratings.integral_rates,
                   "Give every user rate 1 and set T = |V|");
  ingest->add_option("--horizon", ratings.horizon, "Horizon for random rates")
      ->check(CLI::NonNegativeNumber);
  ingest->add_option("--b", b, "Uniform offline capacity")->check(CLI::PositiveNumber);
  ingest->add_option("--eta", eta, "Matches per arrival")->check(CLI::PositiveNumber);
  ingest->add_option("--out", out_path, "Instance file to write")->required();

  // Shared run options.
  std::string instance_path;
  std::string objective_name;
  std::string solver_name = "lp";
  std::string benchmark_name = "lp";
  std::string solution_path;
  int steps = 100;
  int grad_samples = 100;
  int trials = 1000;
  int workers = 1;
  bool allow_fractional_cr = false;

  auto* offline = app.add_subcommand("offline", "Solve the offline program");
  offline->add_option("--instance", instance_path, "Instance file")->required();
  offline->add_option("--objective", objective_name, "Expected objective kind");
  offline->add_option("--solver", solver_name, "lp or greedy");
  offline->add_option("--steps", steps, "Continuous greedy steps")
      ->check(CLI::PositiveNumber);
  offline->add_option("--grad-samples", grad_samples, "Samples per gradient")
      ->check(CLI::PositiveNumber);
  offline->add_option("--seed", seed, "Random seed");
  offline->add_option("--b", b, "Uniform offline capacity")->check(CLI::PositiveNumber);
  offline->add_option("--eta", eta, "Matches per arrival")->check(CLI::PositiveNumber);
  offline->add_option("--benchmark", benchmark_name, "lp, brute or f_star_scaled");
  offline->add_option("--out", out_path, "Solution artifact to write")->required();

  std::string algorithm_name;
  auto* simulate = app.add_subcommand("simulate", "Simulate one online algorithm");
  simulate->add_option("--instance", instance_path, "Instance file")->required();
  simulate->add_option("--objective", objective_name, "Expected objective kind");
  simulate->add_option("--algorithm", algorithm_name, "mmp, cr, greedy or neg-cr")
      ->required();
  simulate->add_option("--solution", solution_path,
                       "Offline artifact; solved on the fly when absent");
  simulate->add_option("--solver", solver_name, "lp or greedy (without --solution)");
  simulate->add_option("--steps", steps, "Continuous greedy steps")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--grad-samples", grad_samples, "Samples per gradient")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--b", b, "Uniform offline capacity")->check(CLI::PositiveNumber);
  simulate->add_option("--eta", eta, "Matches per arrival")->check(CLI::PositiveNumber);
  simulate->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--benchmark", benchmark_name, "lp, brute or f_star_scaled");
  simulate->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_flag("--allow-fractional-cr", allow_fractional_cr,
                     "Run CR-ALG on non-integral rates");
  simulate->add_option("--out", out_path, "CSV file (stdout when absent)");

  std::vector<std::string> algorithm_names;
  std::vector<int> b_values;
  std::vector<int> eta_values = {1};
  std::string histogram_path;
  auto* experiment = app.add_subcommand("experiment", "Sweep algorithms over b and eta");
  experiment->add_option("--instance", instance_path, "Instance file")->required();
  experiment->add_option("--objective", objective_name, "Expected objective kind");
  experiment->add_option("--algorithm", algorithm_names, "Algorithms to run")
      ->delimiter(',')
      ->required();
  experiment->add_option("--b", b_values, "Capacities to sweep")
      ->delimiter(',')
      ->required()
      ->check(CLI::PositiveNumber);
  experiment->add_option("--eta", eta_values, "Matches per arrival to sweep")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  experiment->add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", seed, "Random seed");
  experiment->add_option("--benchmark", benchmark_name, "lp, brute or f_star_scaled");
  experiment->add_option("--solver", solver_name, "lp or greedy");
  experiment->add_option("--steps", steps, "Continuous greedy steps")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--grad-samples", grad_samples, "Samples per gradient")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  experiment->add_flag("--allow-fractional-cr", allow_fractional_cr,
                       "Run CR-ALG on non-integral rates");
  experiment->add_option("--out", out_path, "CSV report")->required();
  experiment->add_option("--histogram-out", histogram_path,
                         "Coverage histogram CSV (coverage objectives)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    osbm::ContinuousGreedyOptions greedy;
    greedy.steps = steps;
    greedy.grad_samples = grad_samples;
    greedy.seed = osbm::DeriveSeed(seed, 5);

    if (*generate) {
      const auto kind =
          ParseOrUsage<osbm::SyntheticKind>(kind_name, osbm::ParseSyntheticKind, "kind");
      osbm::Problem problem = osbm::GenerateSynthetic(kind, seed);
      if (b > 0) problem.instance = problem.instance.WithUniformCapacity(b);
      osbm::SaveProblem(problem, out_path);
      PrintSummary(problem.instance);
      if (kind == osbm::SyntheticKind::kBudgetAdditive) {
        std::cout << "B=" << osbm::FormatReal(problem.objective.budget()) << '\n';
      }
    } else if (*ingest) {
      RequireFile(ratings_path);
      RequireFile(genres_path);
      osbm::Problem problem =
          osbm::IngestRatingsFiles(ratings_path, genres_path, ratings);
      if (b > 0) problem.instance = problem.instance.WithUniformCapacity(b);
      if (eta > 0) problem.instance = problem.instance.WithEta(eta);
      osbm::SaveProblem(problem, out_path);
      PrintSummary(problem.instance);
    } else if (*offline) {
      const osbm::Problem problem = LoadForRun(instance_path, b, eta, objective_name);
      const auto solver = ParseOrUsage<osbm::OfflineSolver>(
          solver_name, osbm::ParseOfflineSolver, "solver");
      const auto benchmark = ParseOrUsage<osbm::BenchmarkKind>(
          benchmark_name, osbm::ParseBenchmark, "benchmark");
      const osbm::SolutionArtifact artifact =
          osbm::SolveOffline(problem, solver, greedy);
      osbm::SaveSolution(problem.instance, artifact, out_path);
      std::cout << (solver == osbm::OfflineSolver::kLp ? "lp_value=" : "F(x*)=")
                << osbm::FormatReal(artifact.value.value);
      if (artifact.value.std_error > 0.0) {
        std::cout << " std_error=" << osbm::FormatReal(artifact.value.std_error);
      }
      std::cout << '\n'
                << "benchmark " << osbm::BenchmarkName(benchmark) << '='
                << osbm::FormatReal(osbm::ComputeBenchmark(
                       benchmark, problem.instance, problem.objective,
                       artifact.x, osbm::DeriveSeed(seed, 7)))
                << '\n';
    } else if (*simulate) {
      const osbm::Problem problem = LoadForRun(instance_path, b, eta, objective_name);
      const auto algorithm = ParseOrUsage<osbm::AlgorithmKind>(
          algorithm_name, osbm::ParseAlgorithm, "algorithm");
      osbm::SimulationOptions options;
      options.trials = trials;
      options.seed = seed;
      options.workers = workers;
      options.benchmark = ParseOrUsage<osbm::BenchmarkKind>(
          benchmark_name, osbm::ParseBenchmark, "benchmark");
      options.algorithm.allow_fractional_cr = allow_fractional_cr;
      std::vector<double> x;
      if (!solution_path.empty()) {
        RequireFile(solution_path);
        x = osbm::LoadSolution(problem.instance, solution_path).x;
      } else if (osbm::NeedsFractionalSolution(algorithm) ||
                 options.benchmark == osbm::BenchmarkKind::kFStarScaled) {
        const auto solver = ParseOrUsage<osbm::OfflineSolver>(
            solver_name, osbm::ParseOfflineSolver, "solver");
        x = osbm::SolveOffline(problem, solver, greedy).x;
      }
      const osbm::RunMetrics metrics = osbm::Simulate(
          algorithm, problem.instance, problem.objective, x, options);
      if (out_path.empty()) {
        osbm::WriteMetricsHeader(std::cout);
        osbm::WriteMetricsRow(metrics, std::cout);
      } else {
        std::ofstream out = OpenOutput(out_path);
        osbm::WriteMetricsHeader(out);
        osbm::WriteMetricsRow(metrics, out);
        std::cout << metrics.algorithm << " mean=" << osbm::FormatReal(metrics.mean)
                  << " ratio=" << osbm::FormatReal(metrics.ratio) << '\n';
      }
    } else if (*experiment) {
      const osbm::Problem problem = LoadForRun(instance_path, 0, 0, objective_name);
      osbm::ExperimentPlan plan;
      for (const std::string& name : algorithm_names) {
        plan.algorithms.push_back(ParseOrUsage<osbm::AlgorithmKind>(
            name, osbm::ParseAlgorithm, "algorithm"));
      }
      plan.b_values = b_values;
      plan.etas = eta_values;
      plan.trials = trials;
      plan.seed = seed;
      plan.workers = workers;
      plan.benchmark = ParseOrUsage<osbm::BenchmarkKind>(
          benchmark_name, osbm::ParseBenchmark, "benchmark");
      plan.solver = ParseOrUsage<osbm::OfflineSolver>(
          solver_name, osbm::ParseOfflineSolver, "solver");
      plan.greedy = greedy;
      plan.algorithm.allow_fractional_cr = allow_fractional_cr;
      const std::vector<std::string> plan_errors = osbm::ValidatePlan(plan);
      if (!plan_errors.empty()) throw UsageError(plan_errors.front());
      const osbm::ExperimentReport report = osbm::RunExperiment(problem, plan);
      {
        std::ofstream out = OpenOutput(out_path);
        osbm::WriteExperimentCsv(report, out);
      }
      const bool coverage =
          problem.objective.kind() == osbm::ObjectiveKind::kCoverage ||
          problem.objective.kind() == osbm::ObjectiveKind::kPerUserCoverage;
      if (coverage) {
        std::ofstream out = OpenOutput(
            histogram_path.empty() ? out_path + ".coverage.csv" : histogram_path);
        osbm::WriteCoverageHistogramCsv(report, out);
      }
      int failed = 0;
      for (const osbm::ExperimentCell& cell : report.cells) failed += !cell.error.empty();
      std::cout << report.cells.size() << " cells, " << failed << " failed\n";
      std::cout << "reference mmp=" << osbm::FormatReal(1.0 - 1.0 / std::numbers::e)
                << " cr="
                << osbm::FormatReal(0.5 * (1.0 - std::exp(-0.5)))
                << '\n';
    }
  } catch (const UsageError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
