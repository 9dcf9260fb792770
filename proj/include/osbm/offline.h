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

#ifndef OSBM_OFFLINE_H_
#define OSBM_OFFLINE_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "osbm/instance.h"
#include "osbm/lp.h"
#include "osbm/multilinear.h"
#include "osbm/objective.h"

namespace osbm {

struct ContinuousGreedyOptions {
  int steps = 100;
  int grad_samples = 100;
  uint64_t seed = 0;
  SolveOptions lp;
};

struct OfflineSolution {
  FractionalSolution x;
  // Estimate of F(x); exact (zero std_error) when m <= kMaxExactEdges.
  Estimate value;
  int steps = 0;
  int grad_samples = 0;
  uint64_t seed = 0;
  // F estimate at the start of every iteration, from that iteration's batch.
  std::vector<Estimate> trajectory;
};

// Continuous greedy over the b-matching polytope: x starts at 0 and each of
// `steps` iterations adds (1 / steps) times the LMO vertex for the estimated
// gradient. The result is pulled strictly inside the polytope afterwards.
OfflineSolution ContinuousGreedy(const Objective& f, const Instance& instance,
                                 const ContinuousGreedyOptions& options = {});

// Scales x by (1 - 1e-9), then rescales any row still above its rhs and clips
// entries to [0, 1].
void RestoreFeasibility(const Instance& instance, FractionalSolution& x);

// Randomized pipage rounding on the bipartite support of x: mass is shifted
// along alternating cycles or maximal paths of fractional edges with
// probabilities that keep every marginal, until x is integral. Returns the
// chosen edges in ascending order. Vertex degrees end at the floor or ceiling
// of their fractional degree.
std::vector<int> PipageRound(const Instance& instance,
                             std::span<const double> x, uint64_t seed);

// Upper limit on the number of candidate edge subsets a hindsight search may
// visit.
inline constexpr double kHindsightSearchLimit = 1e7;

struct HindsightResult {
  double value = 0.0;
  std::vector<int> edges;
  // (slot, edge) pairs: which arrival each chosen edge is assigned to.
  std::vector<std::pair<int, int>> assignment;
};

// Best matching in hindsight for one arrival sequence: each arrival may take
// up to eta distinct available neighbors, each u at most C_u arrivals. Exact,
// by branch and bound over edge subsets of the arrived types. Throws
// std::invalid_argument when the search space exceeds kHindsightSearchLimit.
HindsightResult HindsightOptimal(const Instance& instance,
                                 const ArrivalSequence& sequence,
                                 const Objective& f);

enum class ExpectationMode { kExact, kMonteCarlo };

// Upper limit on distinct arrival-count classes enumerated in exact mode.
inline constexpr double kExactClassLimit = 1e6;

// E[OPT] over random arrival sequences. Exact mode sums over arrival-count
// classes (hindsight OPT depends only on how many times each type arrived,
// capped where extra arrivals cannot help) weighted by multinomial
// probabilities; Monte Carlo mode averages hindsight OPT over `trials`
// sampled sequences.
Estimate ExpectedOpt(const Instance& instance, const Objective& f,
                     ExpectationMode mode, int trials = 0, uint64_t seed = 0);

}  // namespace osbm

#endif  // OSBM_OFFLINE_H_
