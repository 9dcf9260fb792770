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

#ifndef OSBM_ONLINE_H_
#define OSBM_ONLINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osbm/instance.h"
#include "osbm/multilinear.h"
#include "osbm/objective.h"

namespace osbm {

// Mutable state of one online run. Matches are irrevocable: the matched list
// only grows and remaining capacities only shrink. Every call is checked
// against the current arrival, so an algorithm cannot match an edge that is
// not incident to it, reuse an offline vertex within one arrival, exceed eta
// matches per arrival, or overfill a vertex.
class MatchState {
 public:
  MatchState(const Instance& instance, const Objective& objective);

  // Starts slot t = time() with arrival `v` (or kNoArrival) and advances the
  // clock.
  void BeginSlot(int v);

  // Throws std::logic_error when the match breaks any rule above.
  void Match(int edge);

  int time() const { return time_; }
  int current_arrival() const { return current_; }
  int matches_this_arrival() const {
    return static_cast<int>(picked_this_arrival_.size());
  }
  bool available(int u) const { return remaining_[u] > 0; }
  int remaining(int u) const { return remaining_[u]; }
  bool picked_this_arrival(int u) const;
  // Matched edges in match order; an edge repeats when the same type is
  // matched to the same vertex on different arrivals.
  const std::vector<int>& matched() const { return matched_; }
  const ObjectiveState& objective_state() const { return state_; }
  double value() const { return state_.value(); }

 private:
  const Instance& instance_;
  std::vector<int> remaining_;
  std::vector<int> matched_;
  std::vector<int> picked_this_arrival_;
  ObjectiveState state_;
  int time_ = 0;
  int current_ = kNoArrival;
};

// Per-run decision rule. Implementations hold whatever randomness they drew
// when the run started.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  // Called once per arrival; matches through `state`.
  virtual void OnArrival(int v, MatchState& state) = 0;
};

// Prepared algorithm shared read-only by concurrent runs. Start draws the
// run's own randomness (for example the sampled support of CR-ALG).
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::string_view name() const = 0;
  virtual std::unique_ptr<OnlinePolicy> Start(uint64_t seed) const = 0;
};

enum class AlgorithmKind { kMmp, kCr, kGreedy, kNegCr };

// "mmp", "cr", "greedy", "neg-cr".
std::string_view AlgorithmName(AlgorithmKind kind);
// Also accepts "mmp-alg", "cr-alg" and "neg_cr".
std::optional<AlgorithmKind> ParseAlgorithm(std::string_view name);
bool NeedsFractionalSolution(AlgorithmKind kind);

// On an arrival of v, draws an edge with probability x_e / (eta r_v) (skip
// with the remaining mass), eta times, and matches each drawn edge whose
// offline end is free. Throws std::invalid_argument when x is infeasible for
// the per-type rows.
std::unique_ptr<OnlineAlgorithm> MakeMmp(const Instance& instance,
                                         std::span<const double> x);

// Each run samples X independently with P[X_e] = x_e and keeps Y <= X with
// min(C_u, |E_X(u)|) edges per offline vertex. On an arrival of v it picks
// min(eta, |E_X(v)|) distinct edges of E_X(v) uniformly and matches each one
// with Y_e = 1 and a free offline end. Requires r_v = 1 for all v and |V| = T
// unless `allow_fractional_rates` is set.
std::unique_ptr<OnlineAlgorithm> MakeCr(const Instance& instance,
                                        std::span<const double> x,
                                        bool allow_fractional_rates = false);

// Matches up to eta free neighbors by repeated argmax of marginal gain; ties
// go to the lowest offline index.
std::unique_ptr<OnlineAlgorithm> MakeGreedy(const Instance& instance,
                                            const Objective& f);

// Each run rounds x star by star into M1. On an arrival of v it matches up to
// eta distinct M1 neighbors with a free offline end, each chosen uniformly.
std::unique_ptr<OnlineAlgorithm> MakeNegCr(const Instance& instance,
                                           std::span<const double> x);

struct AlgorithmOptions {
  bool allow_fractional_cr = false;
};

// Dispatches on kind; `x` is ignored by Greedy.
std::unique_ptr<OnlineAlgorithm> MakeAlgorithm(AlgorithmKind kind,
                                               const Instance& instance,
                                               const Objective& f,
                                               std::span<const double> x,
                                               const AlgorithmOptions& options = {});

struct TrialResult {
  double value = 0.0;
  std::vector<int> matched;
  ArrivalSequence arrivals;
};

// One run with trial seed s: the policy uses DeriveSeed(s, 1), the arrivals
// DeriveSeed(s, 2), so algorithms compared under one seed see the same
// arrivals.
TrialResult RunTrial(const OnlineAlgorithm& algorithm,
                     const Instance& instance, const Objective& f,
                     uint64_t trial_seed);

// Runs trials seed + 0, ..., seed + trials - 1, sharded over `workers`
// threads, and calls visit(t, result) from the thread that ran trial t.
void ForEachTrial(const OnlineAlgorithm& algorithm, const Instance& instance,
                  const Objective& f, int trials, uint64_t seed, int workers,
                  const std::function<void(int, const TrialResult&)>& visit);

// Values of trials seed + 0, ..., seed + trials - 1, sharded over `workers`
// threads. The result does not depend on the worker count.
std::vector<double> RunTrials(const OnlineAlgorithm& algorithm,
                              const Instance& instance, const Objective& f,
                              int trials, uint64_t seed, int workers = 1);

enum class BenchmarkKind { kLp, kBrute, kFStarScaled };

std::string_view BenchmarkName(BenchmarkKind kind);  // lp, brute, f_star_scaled
std::optional<BenchmarkKind> ParseBenchmark(std::string_view name);

// Upper bounds on E[OPT]: the epigraph LP optimum, exact E[OPT], or
// F(x*) e / (e - 1). F(x*) is exact up to kMaxExactEdges edges and estimated
// from 10^4 draws otherwise. Throws std::invalid_argument when the benchmark
// is unavailable.
double ComputeBenchmark(BenchmarkKind kind, const Instance& instance,
                        const Objective& f, std::span<const double> x_star,
                        uint64_t seed);

struct RunMetrics {
  std::string algorithm;
  ObjectiveKind objective = ObjectiveKind::kLinear;
  int b = 0;  // common capacity, 0 when capacities differ
  int eta = 1;
  int trials = 0;
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  BenchmarkKind benchmark_kind = BenchmarkKind::kLp;
  double benchmark_value = 0.0;
  double ratio = 0.0;  // mean / benchmark_value
};

// Summary statistics of `values` against the given benchmark.
RunMetrics Summarize(std::string algorithm, const Instance& instance,
                     const Objective& f, std::vector<double> values,
                     BenchmarkKind benchmark_kind, double benchmark_value);

struct SimulationOptions {
  int trials = 1000;
  uint64_t seed = 0;
  int workers = 1;
  BenchmarkKind benchmark = BenchmarkKind::kLp;
  AlgorithmOptions algorithm;
};

// Builds the algorithm, runs the trials and divides by the benchmark.
RunMetrics Simulate(AlgorithmKind kind, const Instance& instance,
                    const Objective& f, std::span<const double> x_star,
                    const SimulationOptions& options);

// CSV columns: algorithm,objective,b,eta,trials,mean,std_error,
// benchmark_kind,benchmark_value,ratio.
void WriteMetricsHeader(std::ostream& out);
void WriteMetricsRow(const RunMetrics& metrics, std::ostream& out);

}  // namespace osbm

#endif  // OSBM_ONLINE_H_
