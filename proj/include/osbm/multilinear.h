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

#ifndef OSBM_MULTILINEAR_H_
#define OSBM_MULTILINEAR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "osbm/objective.h"
#include "osbm/random.h"

namespace osbm {

// Marginal probabilities x_e in [0, 1], one entry per edge.
using FractionalSolution = std::vector<double>;

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Largest edge count accepted by MultilinearExact.
inline constexpr int kMaxExactEdges = 20;

// F(x) = sum over T of f(T) prod_{e in T} x_e prod_{e not in T} (1 - x_e), by
// full enumeration. Throws std::invalid_argument above kMaxExactEdges.
double MultilinearExact(const Objective& f, std::span<const double> x);

// Mean of f(R_x) over independent inclusion draws.
Estimate MultilinearMc(const Objective& f, std::span<const double> x,
                       int samples, uint64_t seed);

// dF/dx_e = F(x | x_e = 1) - F(x | x_e = 0), estimated from draws on the
// other coordinates shared by both endpoints.
Estimate PartialDerivative(const Objective& f, std::span<const double> x,
                           int edge, int samples, uint64_t seed);

// All partial derivatives from one shared batch of random sets. `value` is the
// estimate of F(x) obtained from the same batch.
struct GradientEstimate {
  std::vector<double> gradient;
  Estimate value;
};
GradientEstimate EstimateGradient(const Objective& f,
                                  std::span<const double> x, int samples,
                                  Rng& rng);

}  // namespace osbm

#endif  // OSBM_MULTILINEAR_H_
