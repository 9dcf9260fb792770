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

#include "osbm/rounding.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "osbm/random.h"

namespace osbm {
namespace {

bool IsFractional(double value) {
  return value > kIntegralTolerance && value < 1.0 - kIntegralTolerance;
}

}  // namespace

std::vector<uint8_t> IndependentSample(std::span<const double> x,
                                       uint64_t seed) {
  Rng rng(seed);
  std::vector<uint8_t> sampled(x.size());
  for (size_t e = 0; e < x.size(); ++e) {
    sampled[e] = rng.Bernoulli(x[e]) ? 1 : 0;
  }
  return sampled;
}

std::vector<uint8_t> SelectPerStar(std::span<const uint8_t> sampled,
                                   const Instance& instance, uint64_t seed) {
  Rng rng(seed);
  std::vector<uint8_t> selected(sampled.size(), 0);
  std::vector<int> star;
  for (int u = 0; u < instance.num_offline(); ++u) {
    star.clear();
    for (int e : instance.offline_edges(u)) {
      if (sampled[e]) star.push_back(e);
    }
    if (star.empty()) continue;
    const int keep =
        std::min(instance.capacity(u), static_cast<int>(star.size()));
    for (int pick : rng.SampleWithoutReplacement(static_cast<int>(star.size()),
                                                 keep)) {
      selected[star[pick]] = 1;
    }
  }
  return selected;
}

std::vector<int> DependentRoundStars(std::span<const double> x,
                                     const Instance& instance, uint64_t seed) {
  if (static_cast<int>(x.size()) != instance.num_edges()) {
    throw std::invalid_argument("solution length differs from m");
  }
  Rng rng(seed);
  std::vector<double> y(x.begin(), x.end());
  for (int u = 0; u < instance.num_offline(); ++u) {
    std::span<const int> star = instance.offline_edges(u);
    double sum = 0.0;
    for (int e : star) sum += y[e];
    if (sum > instance.capacity(u) + 1e-9) {
      throw std::invalid_argument("star at '" + instance.offline()[u].id +
                                  "' exceeds its capacity");
    }
    // Repeatedly settle the lowest-index fractional pair until at most one
    // fractional coordinate remains.
    while (true) {
      int first = -1;
      int second = -1;
      for (int e : star) {
        if (!IsFractional(y[e])) continue;
        if (first < 0) {
          first = e;
        } else {
          second = e;
          break;
        }
      }
      if (first < 0) break;
      if (second < 0) {
        y[first] = rng.Bernoulli(y[first]) ? 1.0 : 0.0;
        break;
      }
      const double up = std::min(1.0 - y[first], y[second]);
      const double down = std::min(y[first], 1.0 - y[second]);
      if (rng.Uniform() * (up + down) < down) {
        y[first] += up;
        y[second] -= up;
      } else {
        y[first] -= down;
        y[second] += down;
      }
      for (int e : {first, second}) {
        if (y[e] <= kIntegralTolerance) y[e] = 0.0;
        if (y[e] >= 1.0 - kIntegralTolerance) y[e] = 1.0;
      }
    }
  }
  std::vector<int> chosen;
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (y[e] >= 0.5) chosen.push_back(e);
  }
  return chosen;
}

}  // namespace osbm
