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

#include "osbm/offline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "osbm/random.h"
#include "osbm/rounding.h"

namespace osbm {
namespace {

// Branch and bound for max f(S) over S within `candidates` subject to
// |S at v| <= cap_v and |S at u| <= C_u. Leaves that could still take another
// candidate are skipped since f is monotone.
class SubsetSearch {
 public:
  SubsetSearch(const Instance& instance, const Objective& f,
               std::vector<int> candidates, std::vector<int> online_caps)
      : instance_(instance),
        candidates_(std::move(candidates)),
        online_caps_(std::move(online_caps)),
        online_degree_(instance.num_online(), 0),
        offline_degree_(instance.num_offline(), 0),
        included_(candidates_.size(), 0),
        state_(f) {
    // Large singletons first so the bound bites early; ties by index.
    std::stable_sort(candidates_.begin(), candidates_.end(), [&](int a, int b) {
      return state_.Gain(a) > state_.Gain(b);
    });
  }

  double Run(std::vector<int>* best_edges) {
    best_ = -std::numeric_limits<double>::infinity();
    best_edges_.clear();
    Visit(0);
    if (best_edges) *best_edges = best_edges_;
    return std::max(best_, 0.0);
  }

 private:
  bool Fits(int e) const {
    const Edge& edge = instance_.edge(e);
    return online_degree_[edge.v] < online_caps_[edge.v] &&
           offline_degree_[edge.u] < instance_.capacity(edge.u);
  }

  void Visit(size_t index) {
    if (index == candidates_.size()) {
      for (size_t i = 0; i < candidates_.size(); ++i) {
        if (!included_[i] && Fits(candidates_[i])) return;
      }
      const double value = state_.value();
      if (value > best_ + 1e-12) {
        best_ = value;
        best_edges_.clear();
        for (size_t i = 0; i < candidates_.size(); ++i) {
          if (included_[i]) best_edges_.push_back(candidates_[i]);
        }
      }
      return;
    }
    double bound = state_.value();
    for (size_t i = index; i < candidates_.size(); ++i) {
      if (Fits(candidates_[i])) bound += state_.Gain(candidates_[i]);
    }
    if (bound <= best_ + 1e-12) return;

    const int e = candidates_[index];
    if (Fits(e)) {
      const Edge& edge = instance_.edge(e);
      ++online_degree_[edge.v];
      ++offline_degree_[edge.u];
      included_[index] = 1;
      state_.Add(e);
      Visit(index + 1);
      state_.Remove(e);
      included_[index] = 0;
      --online_degree_[edge.v];
      --offline_degree_[edge.u];
    }
    Visit(index + 1);
  }

  const Instance& instance_;
  std::vector<int> candidates_;
  std::vector<int> online_caps_;
  std::vector<int> online_degree_;
  std::vector<int> offline_degree_;
  std::vector<uint8_t> included_;
  ObjectiveState state_;
  double best_ = 0.0;
  std::vector<int> best_edges_;
};

double LogChoose(const std::vector<double>& log_factorial, int n, int k) {
  return log_factorial[n] - log_factorial[k] - log_factorial[n - k];
}

// Log of the number of subsets of size <= eta from d items.
double LogChoicesPerArrival(int degree, int eta) {
  double total = 0.0;
  double term = 1.0;
  for (int k = 0; k <= std::min(degree, eta); ++k) {
    total += term;
    term = term * (degree - k) / (k + 1);
  }
  return std::log(total);
}

// Edges of arrived types and per-type caps eta * count, with the search size
// checked against kHindsightSearchLimit.
double OptimalForCounts(const Instance& instance, const Objective& f,
                        const std::vector<int>& counts,
                        std::vector<int>* best_edges) {
  std::vector<int> candidates;
  std::vector<int> caps(instance.num_online(), 0);
  double log_arrival_product = 0.0;
  for (int v = 0; v < instance.num_online(); ++v) {
    if (counts[v] == 0) continue;
    const int degree = static_cast<int>(instance.online_edges(v).size());
    caps[v] = static_cast<int>(std::min<int64_t>(
        static_cast<int64_t>(instance.eta()) * counts[v], degree));
    candidates.insert(candidates.end(), instance.online_edges(v).begin(),
                      instance.online_edges(v).end());
    log_arrival_product += counts[v] * LogChoicesPerArrival(degree, instance.eta());
  }
  const double log_subsets = candidates.size() * std::log(2.0);
  if (std::min(log_subsets, log_arrival_product) >
      std::log(kHindsightSearchLimit)) {
    throw std::invalid_argument(
        "hindsight search space exceeds the limit (" +
        std::to_string(candidates.size()) + " candidate edges)");
  }
  SubsetSearch search(instance, f, std::move(candidates), std::move(caps));
  return search.Run(best_edges);
}

void CheckPair(const Instance& instance, const Objective& f) {
  if (f.num_edges() != instance.num_edges()) {
    throw std::invalid_argument("objective and instance differ in edge count");
  }
}

}  // namespace

void RestoreFeasibility(const Instance& instance, FractionalSolution& x) {
  for (double& value : x) value *= 1.0 - 1e-9;
  auto rescale = [&](std::span<const int> edges, double rhs) {
    double sum = 0.0;
    for (int e : edges) sum += x[e];
    if (sum > rhs && sum > 0.0) {
      const double factor = rhs / sum;
      for (int e : edges) x[e] *= factor;
    }
  };
  for (int v = 0; v < instance.num_online(); ++v) {
    rescale(instance.online_edges(v), instance.eta() * instance.rate(v));
  }
  for (int u = 0; u < instance.num_offline(); ++u) {
    rescale(instance.offline_edges(u), instance.capacity(u));
  }
  for (double& value : x) value = std::clamp(value, 0.0, 1.0);
}

OfflineSolution ContinuousGreedy(const Objective& f, const Instance& instance,
                                 const ContinuousGreedyOptions& options) {
  CheckPair(instance, f);
  if (options.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (options.grad_samples < 1) {
    throw std::invalid_argument("grad_samples must be >= 1");
  }
  const int m = instance.num_edges();
  OfflineSolution result;
  result.steps = options.steps;
  result.grad_samples = options.grad_samples;
  result.seed = options.seed;
  result.x.assign(m, 0.0);
  Rng rng(DeriveSeed(options.seed, 0));
  const double step = 1.0 / options.steps;
  for (int k = 0; k < options.steps; ++k) {
    GradientEstimate gradient =
        EstimateGradient(f, result.x, options.grad_samples, rng);
    result.trajectory.push_back(gradient.value);
    const LpSolution direction =
        Solve(BuildMatchingLmo(instance, gradient.gradient), options.lp);
    if (direction.status != LpStatus::kOptimal) {
      throw std::runtime_error("linear maximization step did not solve");
    }
    for (int e = 0; e < m; ++e) result.x[e] += step * direction.x[e];
  }
  RestoreFeasibility(instance, result.x);
  if (m <= kMaxExactEdges) {
    result.value = {MultilinearExact(f, result.x), 0.0};
  } else {
    result.value =
        MultilinearMc(f, result.x, std::max(1000, 10 * options.grad_samples),
                      DeriveSeed(options.seed, 1));
  }
  return result;
}

std::vector<int> PipageRound(const Instance& instance,
                             std::span<const double> x, uint64_t seed) {
  const int m = instance.num_edges();
  if (static_cast<int>(x.size()) != m) {
    throw std::invalid_argument("solution length differs from m");
  }
  Rng rng(seed);
  std::vector<double> y(x.begin(), x.end());
  auto fractional = [&](int e) {
    return y[e] > kIntegralTolerance && y[e] < 1.0 - kIntegralTolerance;
  };
  // Vertices: offline u -> u, online v -> |U| + v.
  const int offset = instance.num_offline();
  auto ends = [&](int e) {
    return std::pair<int, int>{instance.edge(e).u,
                               offset + instance.edge(e).v};
  };
  auto incident = [&](int vertex) {
    return vertex < offset ? instance.offline_edges(vertex)
                           : instance.online_edges(vertex - offset);
  };

  std::vector<int> walk_edges;
  std::vector<int> walk_vertices;
  std::vector<int> position(offset + instance.num_online(), -1);
  std::vector<uint8_t> on_walk(m, 0);
  for (int start = 0; start < m; ++start) {
    while (fractional(start)) {
      walk_edges.assign({start});
      const auto [a, b] = ends(start);
      walk_vertices.assign({a, b});
      position[a] = 0;
      position[b] = 1;
      on_walk[start] = 1;
      int cycle_from = -1;
      // Extend forward; when stuck, reverse and extend from the other end.
      for (int pass = 0; pass < 2 && cycle_from < 0; ++pass) {
        while (cycle_from < 0) {
          const int tail = walk_vertices.back();
          int next = -1;
          for (int e : incident(tail)) {
            if (!on_walk[e] && fractional(e)) {
              next = e;
              break;
            }
          }
          if (next < 0) break;
          const auto [p, q] = ends(next);
          const int other = p == tail ? q : p;
          walk_edges.push_back(next);
          on_walk[next] = 1;
          if (position[other] >= 0) {
            cycle_from = position[other];
            break;
          }
          position[other] = static_cast<int>(walk_vertices.size());
          walk_vertices.push_back(other);
        }
        if (cycle_from < 0 && pass == 0) {
          std::reverse(walk_edges.begin(), walk_edges.end());
          std::reverse(walk_vertices.begin(), walk_vertices.end());
          for (size_t i = 0; i < walk_vertices.size(); ++i) {
            position[walk_vertices[i]] = static_cast<int>(i);
          }
        }
      }
      // A cycle closing at vertex index c uses the edges from c onward.
      std::vector<int> chain(walk_edges.begin() + std::max(cycle_from, 0),
                             walk_edges.end());
      for (int vertex : walk_vertices) position[vertex] = -1;
      for (int e : walk_edges) on_walk[e] = 0;

      double raise = std::numeric_limits<double>::infinity();
      double lower = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < chain.size(); ++i) {
        const double value = y[chain[i]];
        if (i % 2 == 0) {
          raise = std::min(raise, 1.0 - value);
          lower = std::min(lower, value);
        } else {
          raise = std::min(raise, value);
          lower = std::min(lower, 1.0 - value);
        }
      }
      const bool go_up = rng.Uniform() * (raise + lower) < lower;
      const double delta = go_up ? raise : -lower;
      for (size_t i = 0; i < chain.size(); ++i) {
        double& value = y[chain[i]];
        value += i % 2 == 0 ? delta : -delta;
        if (value <= kIntegralTolerance) value = 0.0;
        if (value >= 1.0 - kIntegralTolerance) value = 1.0;
      }
    }
  }
  std::vector<int> chosen;
  for (int e = 0; e < m; ++e) {
    if (y[e] >= 0.5) chosen.push_back(e);
  }
  return chosen;
}

HindsightResult HindsightOptimal(const Instance& instance,
                                 const ArrivalSequence& sequence,
                                 const Objective& f) {
  CheckPair(instance, f);
  std::vector<int> counts(instance.num_online(), 0);
  std::vector<std::vector<int>> slots_of(instance.num_online());
  for (int t = 0; t < static_cast<int>(sequence.slots.size()); ++t) {
    const int v = sequence.slots[t];
    if (v == kNoArrival) continue;
    if (v < 0 || v >= instance.num_online()) {
      throw std::invalid_argument("arrival sequence names an unknown type");
    }
    ++counts[v];
    slots_of[v].push_back(t);
  }
  HindsightResult result;
  result.value = OptimalForCounts(instance, f, counts, &result.edges);
  std::sort(result.edges.begin(), result.edges.end());
  std::vector<int> used(instance.num_online(), 0);
  for (int e : result.edges) {
    const int v = instance.edge(e).v;
    const int slot = slots_of[v][used[v]++ / instance.eta()];
    result.assignment.emplace_back(slot, e);
  }
  std::sort(result.assignment.begin(), result.assignment.end());
  return result;
}

Estimate ExpectedOpt(const Instance& instance, const Objective& f,
                     ExpectationMode mode, int trials, uint64_t seed) {
  CheckPair(instance, f);
  const int n = instance.num_online();
  const int horizon = instance.horizon();
  // Arrivals of v beyond ceil(deg / eta) cannot change hindsight OPT.
  std::vector<int> saturation(n);
  for (int v = 0; v < n; ++v) {
    const int degree = static_cast<int>(instance.online_edges(v).size());
    saturation[v] =
        std::min(horizon, (degree + instance.eta() - 1) / instance.eta());
  }

  if (mode == ExpectationMode::kMonteCarlo) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::map<std::vector<int>, double> cache;
    RunningStats stats;
    std::vector<int> counts(n);
    for (int t = 0; t < trials; ++t) {
      const ArrivalSequence sequence =
          SampleArrivals(instance, DeriveSeed(seed, static_cast<uint64_t>(t)));
      std::fill(counts.begin(), counts.end(), 0);
      for (int v : sequence.slots) {
        if (v != kNoArrival) ++counts[v];
      }
      for (int v = 0; v < n; ++v) counts[v] = std::min(counts[v], saturation[v]);
      auto it = cache.find(counts);
      if (it == cache.end()) {
        it = cache.emplace(counts, OptimalForCounts(instance, f, counts, nullptr))
                 .first;
      }
      stats.Add(it->second);
    }
    return {stats.mean(), stats.std_error()};
  }

  double classes = 1.0;
  for (int v = 0; v < n; ++v) classes *= saturation[v] + 1;
  if (classes > kExactClassLimit) {
    throw std::invalid_argument("exact E[OPT] needs too many count classes");
  }
  std::vector<double> log_factorial(horizon + 1, 0.0);
  for (int k = 1; k <= horizon; ++k) {
    log_factorial[k] = log_factorial[k - 1] + std::log(static_cast<double>(k));
  }
  double no_arrival = 1.0;
  for (int v = 0; v < n; ++v) no_arrival -= instance.arrival_probability(v);
  no_arrival = std::max(no_arrival, 0.0);

  // weight[s] is the probability mass of the partial count assignment with s
  // slots consumed so far (multinomial factored type by type).
  std::vector<int> counts(n, 0);
  double expectation = 0.0;
  auto transition = [&](const std::vector<double>& weight, int v, int lo,
                        int hi) {
    std::vector<double> next(horizon + 1, 0.0);
    const double p = instance.arrival_probability(v);
    const double log_p = p > 0.0 ? std::log(p) : 0.0;
    for (int s = 0; s <= horizon; ++s) {
      if (weight[s] == 0.0) continue;
      const int top = std::min(hi, horizon - s);
      for (int k = lo; k <= top; ++k) {
        if (k > 0 && p <= 0.0) break;
        next[s + k] += weight[s] *
                       std::exp(LogChoose(log_factorial, horizon - s, k) + k * log_p);
      }
    }
    return next;
  };
  auto recurse = [&](auto&& self, int v, const std::vector<double>& weight) -> void {
    if (v == n) {
      double probability = 0.0;
      for (int s = 0; s <= horizon; ++s) {
        if (weight[s] == 0.0) continue;
        probability += weight[s] * std::pow(no_arrival, horizon - s);
      }
      if (probability > 0.0) {
        expectation += probability * OptimalForCounts(instance, f, counts, nullptr);
      }
      return;
    }
    for (int c = 0; c <= saturation[v]; ++c) {
      counts[v] = c;
      const int hi = c < saturation[v] ? c : horizon;
      self(self, v + 1, transition(weight, v, c, hi));
    }
    counts[v] = 0;
  };
  std::vector<double> initial(horizon + 1, 0.0);
  initial[0] = 1.0;
  recurse(recurse, 0, initial);
  return {expectation, 0.0};
}

}  // namespace osbm
