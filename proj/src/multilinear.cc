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

#include "osbm/multilinear.h"

#include <stdexcept>
#include <string>

namespace osbm {
namespace {

void CheckPoint(const Objective& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.num_edges()) {
    throw std::invalid_argument("fractional solution length differs from m");
  }
}

void Draw(std::span<const double> x, Rng& rng, std::vector<uint8_t>& out) {
  for (size_t e = 0; e < x.size(); ++e) out[e] = rng.Bernoulli(x[e]) ? 1 : 0;
}

}  // namespace

double MultilinearExact(const Objective& f, std::span<const double> x) {
  CheckPoint(f, x);
  const int m = f.num_edges();
  if (m > kMaxExactEdges) {
    throw std::invalid_argument("exact multilinear extension needs m <= " +
                                std::to_string(kMaxExactEdges));
  }
  // Gray-code walk: consecutive subsets differ in one edge.
  ObjectiveState state(f);
  double total = 0.0;
  const uint32_t count = 1u << m;
  uint32_t previous = 0;
  for (uint32_t i = 0; i < count; ++i) {
    const uint32_t mask = i ^ (i >> 1);
    if (i > 0) {
      const uint32_t flipped = mask ^ previous;
      const int e = __builtin_ctz(flipped);
      if (mask & flipped) {
        state.Add(e);
      } else {
        state.Remove(e);
      }
    }
    previous = mask;
    double probability = 1.0;
    for (int e = 0; e < m && probability != 0.0; ++e) {
      probability *= (mask >> e) & 1u ? x[e] : 1.0 - x[e];
    }
    if (probability != 0.0) total += probability * state.value();
  }
  return total;
}

Estimate MultilinearMc(const Objective& f, std::span<const double> x,
                       int samples, uint64_t seed) {
  CheckPoint(f, x);
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  Rng rng(seed);
  std::vector<uint8_t> draw(x.size());
  RunningStats stats;
  for (int s = 0; s < samples; ++s) {
    Draw(x, rng, draw);
    stats.Add(f.EvalIndicator(draw));
  }
  return {stats.mean(), stats.std_error()};
}

Estimate PartialDerivative(const Objective& f, std::span<const double> x,
                           int edge, int samples, uint64_t seed) {
  CheckPoint(f, x);
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (edge < 0 || edge >= f.num_edges()) {
    throw std::out_of_range("unknown edge index " + std::to_string(edge));
  }
  Rng rng(seed);
  ObjectiveState state(f);
  RunningStats stats;
  for (int s = 0; s < samples; ++s) {
    state.Clear();
    for (int e = 0; e < f.num_edges(); ++e) {
      // Coordinate `edge` is fixed by the difference; skip its draw.
      if (e != edge && rng.Bernoulli(x[e])) state.Add(e);
    }
    stats.Add(state.Gain(edge));
  }
  return {stats.mean(), stats.std_error()};
}

GradientEstimate EstimateGradient(const Objective& f,
                                  std::span<const double> x, int samples,
                                  Rng& rng) {
  CheckPoint(f, x);
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const int m = f.num_edges();
  GradientEstimate result;
  result.gradient.assign(m, 0.0);
  std::vector<uint8_t> draw(m);
  std::vector<double> gains(m);
  RunningStats value;
  for (int s = 0; s < samples; ++s) {
    Draw(x, rng, draw);
    value.Add(f.EvalIndicator(draw));
    f.PairedGains(draw, gains);
    for (int e = 0; e < m; ++e) result.gradient[e] += gains[e];
  }
  for (double& g : result.gradient) g /= samples;
  result.value = {value.mean(), value.std_error()};
  return result;
}

}  // namespace osbm
