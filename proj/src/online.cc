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

#include "osbm/online.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "osbm/lp.h"
#include "osbm/offline.h"
#include "osbm/problem.h"
#include "osbm/random.h"
#include "osbm/rounding.h"

namespace osbm {
namespace {

void CheckSolution(const Instance& instance, std::span<const double> x) {
  if (static_cast<int>(x.size()) != instance.num_edges()) {
    throw std::invalid_argument("fractional solution length differs from m");
  }
  for (double value : x) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::invalid_argument("fractional solution entry outside [0, 1]");
    }
  }
}

// Picks up to eta entries of `candidates` uniformly without replacement and
// matches those accepted by `accept`.
template <typename Accept>
void MatchUniformSubset(std::span<const int> candidates, int eta, Rng& rng,
                        MatchState& state, Accept accept) {
  const int k = std::min<int>(eta, static_cast<int>(candidates.size()));
  if (k == 0) return;
  for (int i : rng.SampleWithoutReplacement(static_cast<int>(candidates.size()), k)) {
    const int e = candidates[i];
    if (accept(e)) state.Match(e);
  }
}

class MmpAlgorithm : public OnlineAlgorithm {
 public:
  MmpAlgorithm(const Instance& instance, std::span<const double> x)
      : instance_(instance), cumulative_(instance.num_online()) {
    CheckSolution(instance, x);
    for (int v = 0; v < instance.num_online(); ++v) {
      const double scale = instance.eta() * instance.rate(v);
      double total = 0.0;
      for (int e : instance.online_edges(v)) {
        total += x[e] / scale;
        cumulative_[v].push_back(total);
      }
      if (total > 1.0 + 1e-9) {
        throw std::invalid_argument(
            "fractional solution exceeds eta * r_v at online type '" +
            instance.online()[v].id + "'");
      }
    }
  }

  std::string_view name() const override { return "mmp"; }

  std::unique_ptr<OnlinePolicy> Start(uint64_t seed) const override {
    return std::make_unique<Policy>(*this, seed);
  }

 private:
  class Policy : public OnlinePolicy {
   public:
    Policy(const MmpAlgorithm& algorithm, uint64_t seed)
        : algorithm_(algorithm), rng_(seed) {}

    void OnArrival(int v, MatchState& state) override {
      const auto& cumulative = algorithm_.cumulative_[v];
      const auto edges = algorithm_.instance_.online_edges(v);
      for (int draw = 0; draw < algorithm_.instance_.eta(); ++draw) {
        const double r = rng_.Uniform();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        if (it == cumulative.end()) continue;
        const int e = edges[it - cumulative.begin()];
        const int u = algorithm_.instance_.edge(e).u;
        if (state.available(u) && !state.picked_this_arrival(u)) state.Match(e);
      }
    }

   private:
    const MmpAlgorithm& algorithm_;
    Rng rng_;
  };

  const Instance& instance_;
  std::vector<std::vector<double>> cumulative_;
};

class CrAlgorithm : public OnlineAlgorithm {
 public:
  CrAlgorithm(const Instance& instance, std::span<const double> x)
      : instance_(instance), x_(x.begin(), x.end()) {
    CheckSolution(instance, x);
  }

  std::string_view name() const override { return "cr"; }

  std::unique_ptr<OnlinePolicy> Start(uint64_t seed) const override {
    return std::make_unique<Policy>(*this, seed);
  }

 private:
  class Policy : public OnlinePolicy {
   public:
    Policy(const CrAlgorithm& algorithm, uint64_t seed)
        : algorithm_(algorithm), rng_(DeriveSeed(seed, 3)) {
      const Instance& instance = algorithm.instance_;
      const std::vector<uint8_t> sampled =
          IndependentSample(algorithm.x_, DeriveSeed(seed, 1));
      selected_ = SelectPerStar(sampled, instance, DeriveSeed(seed, 2));
      sampled_at_.resize(instance.num_online());
      for (int v = 0; v < instance.num_online(); ++v) {
        for (int e : instance.online_edges(v)) {
          if (sampled[e]) sampled_at_[v].push_back(e);
        }
      }
    }

    void OnArrival(int v, MatchState& state) override {
      const Instance& instance = algorithm_.instance_;
      MatchUniformSubset(sampled_at_[v], instance.eta(), rng_, state,
                         [&](int e) {
                           return selected_[e] &&
                                  state.available(instance.edge(e).u);
                         });
    }

   private:
    const CrAlgorithm& algorithm_;
    Rng rng_;
    std::vector<uint8_t> selected_;
    std::vector<std::vector<int>> sampled_at_;
  };

  const Instance& instance_;
  std::vector<double> x_;
};

class GreedyAlgorithm : public OnlineAlgorithm {
 public:
  explicit GreedyAlgorithm(const Instance& instance) : instance_(instance) {}

  std::string_view name() const override { return "greedy"; }

  std::unique_ptr<OnlinePolicy> Start(uint64_t /*seed*/) const override {
    return std::make_unique<Policy>(instance_);
  }

 private:
  class Policy : public OnlinePolicy {
   public:
    explicit Policy(const Instance& instance) : instance_(instance) {}

    void OnArrival(int v, MatchState& state) override {
      for (int pick = 0; pick < instance_.eta(); ++pick) {
        int best = -1;
        int best_u = 0;
        double best_gain = 0.0;
        for (int e : instance_.online_edges(v)) {
          const int u = instance_.edge(e).u;
          if (!state.available(u) || state.picked_this_arrival(u)) continue;
          const double gain = state.objective_state().Gain(e);
          if (best < 0 || gain > best_gain || (gain == best_gain && u < best_u)) {
            best = e;
            best_u = u;
            best_gain = gain;
          }
        }
        if (best < 0) return;
        state.Match(best);
      }
    }

   private:
    const Instance& instance_;
  };

  const Instance& instance_;
};

class NegCrAlgorithm : public OnlineAlgorithm {
 public:
  NegCrAlgorithm(const Instance& instance, std::span<const double> x)
      : instance_(instance), x_(x.begin(), x.end()) {
    CheckSolution(instance, x);
  }

  std::string_view name() const override { return "neg-cr"; }

  std::unique_ptr<OnlinePolicy> Start(uint64_t seed) const override {
    return std::make_unique<Policy>(*this, seed);
  }

 private:
  class Policy : public OnlinePolicy {
   public:
    Policy(const NegCrAlgorithm& algorithm, uint64_t seed)
        : instance_(algorithm.instance_), rng_(DeriveSeed(seed, 2)) {
      chosen_at_.resize(instance_.num_online());
      for (int e : DependentRoundStars(algorithm.x_, instance_,
                                       DeriveSeed(seed, 1))) {
        chosen_at_[instance_.edge(e).v].push_back(e);
      }
    }

    void OnArrival(int v, MatchState& state) override {
      for (int pick = 0; pick < instance_.eta(); ++pick) {
        candidates_.clear();
        for (int e : chosen_at_[v]) {
          const int u = instance_.edge(e).u;
          if (state.available(u) && !state.picked_this_arrival(u)) {
            candidates_.push_back(e);
          }
        }
        if (candidates_.empty()) return;
        state.Match(candidates_[rng_.Below(candidates_.size())]);
      }
    }

   private:
    const Instance& instance_;
    Rng rng_;
    std::vector<std::vector<int>> chosen_at_;
    std::vector<int> candidates_;
  };

  const Instance& instance_;
  std::vector<double> x_;
};

}  // namespace

MatchState::MatchState(const Instance& instance, const Objective& objective)
    : instance_(instance), remaining_(instance.num_offline()), state_(objective) {
  for (int u = 0; u < instance.num_offline(); ++u) {
    remaining_[u] = instance.capacity(u);
  }
}

void MatchState::BeginSlot(int v) {
  if (time_ >= instance_.horizon()) {
    throw std::logic_error("slot beyond the horizon");
  }
  if (v != kNoArrival && (v < 0 || v >= instance_.num_online())) {
    throw std::logic_error("arrival of an unknown online type");
  }
  ++time_;
  current_ = v;
  picked_this_arrival_.clear();
}

bool MatchState::picked_this_arrival(int u) const {
  return std::find(picked_this_arrival_.begin(), picked_this_arrival_.end(),
                   u) != picked_this_arrival_.end();
}

void MatchState::Match(int edge) {
  if (current_ == kNoArrival) throw std::logic_error("match without an arrival");
  if (edge < 0 || edge >= instance_.num_edges()) {
    throw std::logic_error("match of an unknown edge");
  }
  const Edge& e = instance_.edge(edge);
  if (e.v != current_) {
    throw std::logic_error("matched edge is not incident to the arrival");
  }
  if (matches_this_arrival() >= instance_.eta()) {
    throw std::logic_error("more than eta matches for one arrival");
  }
  if (picked_this_arrival(e.u)) {
    throw std::logic_error("offline vertex matched twice in one arrival");
  }
  if (remaining_[e.u] <= 0) {
    throw std::logic_error("offline vertex has no remaining capacity");
  }
  --remaining_[e.u];
  picked_this_arrival_.push_back(e.u);
  matched_.push_back(edge);
  if (!state_.Contains(edge)) state_.Add(edge);
}

std::string_view AlgorithmName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kMmp:
      return "mmp";
    case AlgorithmKind::kCr:
      return "cr";
    case AlgorithmKind::kGreedy:
      return "greedy";
    case AlgorithmKind::kNegCr:
      return "neg-cr";
  }
  return "";
}

std::optional<AlgorithmKind> ParseAlgorithm(std::string_view name) {
  if (name == "mmp" || name == "mmp-alg") return AlgorithmKind::kMmp;
  if (name == "cr" || name == "cr-alg") return AlgorithmKind::kCr;
  if (name == "greedy") return AlgorithmKind::kGreedy;
  if (name == "neg-cr" || name == "neg_cr") return AlgorithmKind::kNegCr;
  return std::nullopt;
}

bool NeedsFractionalSolution(AlgorithmKind kind) {
  return kind != AlgorithmKind::kGreedy;
}

std::unique_ptr<OnlineAlgorithm> MakeMmp(const Instance& instance,
                                         std::span<const double> x) {
  return std::make_unique<MmpAlgorithm>(instance, x);
}

std::unique_ptr<OnlineAlgorithm> MakeCr(const Instance& instance,
                                        std::span<const double> x,
                                        bool allow_fractional_rates) {
  if (!allow_fractional_rates && !instance.has_integral_rates()) {
    throw std::invalid_argument(
        "CR-ALG needs integral rates (r_v = 1 for all v and |V| = T); pass "
        "the fractional-rate override to run it anyway");
  }
  return std::make_unique<CrAlgorithm>(instance, x);
}

std::unique_ptr<OnlineAlgorithm> MakeGreedy(const Instance& instance,
                                            const Objective& f) {
  if (f.num_edges() != instance.num_edges()) {
    throw std::invalid_argument("objective and instance differ in edge count");
  }
  return std::make_unique<GreedyAlgorithm>(instance);
}

std::unique_ptr<OnlineAlgorithm> MakeNegCr(const Instance& instance,
                                           std::span<const double> x) {
  return std::make_unique<NegCrAlgorithm>(instance, x);
}

std::unique_ptr<OnlineAlgorithm> MakeAlgorithm(AlgorithmKind kind,
                                               const Instance& instance,
                                               const Objective& f,
                                               std::span<const double> x,
                                               const AlgorithmOptions& options) {
  switch (kind) {
    case AlgorithmKind::kMmp:
      return MakeMmp(instance, x);
    case AlgorithmKind::kCr:
      return MakeCr(instance, x, options.allow_fractional_cr);
    case AlgorithmKind::kGreedy:
      return MakeGreedy(instance, f);
    case AlgorithmKind::kNegCr:
      return MakeNegCr(instance, x);
  }
  throw std::invalid_argument("unknown algorithm");
}

TrialResult RunTrial(const OnlineAlgorithm& algorithm,
                     const Instance& instance, const Objective& f,
                     uint64_t trial_seed) {
  TrialResult result;
  result.arrivals = SampleArrivals(instance, DeriveSeed(trial_seed, 2));
  std::unique_ptr<OnlinePolicy> policy = algorithm.Start(DeriveSeed(trial_seed, 1));
  MatchState state(instance, f);
  for (int v : result.arrivals.slots) {
    state.BeginSlot(v);
    if (v != kNoArrival) policy->OnArrival(v, state);
  }
  result.value = state.value();
  result.matched = state.matched();
  return result;
}

void ForEachTrial(const OnlineAlgorithm& algorithm, const Instance& instance,
                  const Objective& f, int trials, uint64_t seed, int workers,
                  const std::function<void(int, const TrialResult&)>& visit) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  workers = std::min(workers, trials);
  std::vector<std::exception_ptr> errors(workers);
  auto shard = [&](int worker) {
    try {
      for (int t = worker; t < trials; t += workers) {
        visit(t, RunTrial(algorithm, instance, f, seed + t));
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (workers == 1) {
    shard(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(shard, w);
    for (std::thread& thread : threads) thread.join();
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

std::vector<double> RunTrials(const OnlineAlgorithm& algorithm,
                              const Instance& instance, const Objective& f,
                              int trials, uint64_t seed, int workers) {
  std::vector<double> values(std::max(trials, 0));
  ForEachTrial(algorithm, instance, f, trials, seed, workers,
               [&](int t, const TrialResult& result) {
                 values[t] = result.value;
               });
  return values;
}

std::string_view BenchmarkName(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::kLp:
      return "lp";
    case BenchmarkKind::kBrute:
      return "brute";
    case BenchmarkKind::kFStarScaled:
      return "f_star_scaled";
  }
  return "";
}

std::optional<BenchmarkKind> ParseBenchmark(std::string_view name) {
  if (name == "lp") return BenchmarkKind::kLp;
  if (name == "brute") return BenchmarkKind::kBrute;
  if (name == "f_star_scaled" || name == "f-star-scaled") {
    return BenchmarkKind::kFStarScaled;
  }
  return std::nullopt;
}

double ComputeBenchmark(BenchmarkKind kind, const Instance& instance,
                        const Objective& f, std::span<const double> x_star,
                        uint64_t seed) {
  switch (kind) {
    case BenchmarkKind::kLp: {
      const LpSolution solution = Solve(BuildSpecialLp(instance, f));
      if (solution.status != LpStatus::kOptimal) {
        throw std::runtime_error("benchmark LP did not solve");
      }
      return solution.objective;
    }
    case BenchmarkKind::kBrute:
      return ExpectedOpt(instance, f, ExpectationMode::kExact).value;
    case BenchmarkKind::kFStarScaled: {
      if (static_cast<int>(x_star.size()) != instance.num_edges()) {
        throw std::invalid_argument(
            "f_star_scaled benchmark needs a fractional solution");
      }
      const double value = instance.num_edges() <= kMaxExactEdges
                               ? MultilinearExact(f, x_star)
                               : MultilinearMc(f, x_star, 10000, seed).value;
      return value * std::numbers::e / (std::numbers::e - 1.0);
    }
  }
  throw std::invalid_argument("unknown benchmark");
}

RunMetrics Summarize(std::string algorithm, const Instance& instance,
                     const Objective& f, std::vector<double> values,
                     BenchmarkKind benchmark_kind, double benchmark_value) {
  RunMetrics metrics;
  metrics.algorithm = std::move(algorithm);
  metrics.objective = f.kind();
  metrics.b = instance.num_offline() > 0 ? instance.capacity(0) : 0;
  for (int u = 1; u < instance.num_offline(); ++u) {
    if (instance.capacity(u) != metrics.b) metrics.b = 0;
  }
  metrics.eta = instance.eta();
  metrics.trials = static_cast<int>(values.size());
  RunningStats stats;
  for (double value : values) stats.Add(value);
  metrics.values = std::move(values);
  metrics.mean = stats.mean();
  metrics.stddev = stats.stddev();
  metrics.std_error = stats.std_error();
  metrics.benchmark_kind = benchmark_kind;
  metrics.benchmark_value = benchmark_value;
  metrics.ratio = benchmark_value > 0.0 ? metrics.mean / benchmark_value
                                        : std::nan("");
  return metrics;
}

RunMetrics Simulate(AlgorithmKind kind, const Instance& instance,
                    const Objective& f, std::span<const double> x_star,
                    const SimulationOptions& options) {
  const std::unique_ptr<OnlineAlgorithm> algorithm =
      MakeAlgorithm(kind, instance, f, x_star, options.algorithm);
  const double benchmark = ComputeBenchmark(options.benchmark, instance, f,
                                            x_star, DeriveSeed(options.seed, 7));
  return Summarize(std::string(AlgorithmName(kind)), instance, f,
                   RunTrials(*algorithm, instance, f, options.trials,
                             options.seed, options.workers),
                   options.benchmark, benchmark);
}

void WriteMetricsHeader(std::ostream& out) {
  out << "algorithm,objective,b,eta,trials,mean,std_error,benchmark_kind,"
         "benchmark_value,ratio\n";
}

void WriteMetricsRow(const RunMetrics& metrics, std::ostream& out) {
  out << metrics.algorithm << ',' << ObjectiveKindName(metrics.objective)
      << ',' << metrics.b << ',' << metrics.eta << ',' << metrics.trials << ','
      << FormatReal(metrics.mean) << ',' << FormatReal(metrics.std_error)
      << ',' << BenchmarkName(metrics.benchmark_kind) << ','
      << FormatReal(metrics.benchmark_value) << ','
      << FormatReal(metrics.ratio) << '\n';
}

}  // namespace osbm
