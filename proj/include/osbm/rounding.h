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

#ifndef OSBM_ROUNDING_H_
#define OSBM_ROUNDING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "osbm/instance.h"

namespace osbm {

// Values within this distance of 0 or 1 are treated as integral.
inline constexpr double kIntegralTolerance = 1e-12;

// X: each edge included independently with probability x_e.
std::vector<uint8_t> IndependentSample(std::span<const double> x,
                                       uint64_t seed);

// Y <= X: at every offline vertex u with sampled edges E_X(u), keeps
// min(C_u, |E_X(u)|) of them chosen uniformly without replacement (exactly one
// for unit capacity), independently across vertices.
std::vector<uint8_t> SelectPerStar(std::span<const uint8_t> sampled,
                                   const Instance& instance, uint64_t seed);

// Dependent rounding inside each offline star. Marginals are preserved, the
// number of chosen edges at u is floor or ceil of sum_{e at u} x_e, and edges
// of one star are negatively correlated. Pairs are processed lowest index
// first. Returns the chosen edge indices in ascending order. Throws
// std::invalid_argument when some star sum exceeds C_u.
std::vector<int> DependentRoundStars(std::span<const double> x,
                                     const Instance& instance, uint64_t seed);

}  // namespace osbm

#endif  // OSBM_ROUNDING_H_
