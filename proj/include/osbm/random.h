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

#ifndef OSBM_RANDOM_H_
#define OSBM_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace osbm {

// Mixes a base seed with a stream index (splitmix64 finalizer). Used for every
// seed derivation in the library so that results never depend on scheduling.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Seeded generator with portable draws. std::uniform_*_distribution output is
// implementation-defined, so conversions from raw 64-bit words are done here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  int UniformInt(int lo, int hi) {
    return lo + static_cast<int>(Below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Samples k distinct values from [0, n) in increasing order.
  std::vector<int> SampleWithoutReplacement(int n, int k);

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Streaming mean/variance (Welford), mergeable across shards.
class RunningStats {
 public:
  void Add(double value);
  void Merge(const RunningStats& other);

  int64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; zero for fewer than two samples.
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(variance()); }
  double std_error() const {
    return count_ > 0 ? stddev() / std::sqrt(static_cast<double>(count_))
                      : 0.0;
  }

 private:
  int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace osbm

#endif  // OSBM_RANDOM_H_
