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

#ifndef OSBM_PROBLEM_H_
#define OSBM_PROBLEM_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osbm/instance.h"
#include "osbm/multilinear.h"
#include "osbm/objective.h"

namespace osbm {

// An instance together with the objective defined over its edges.
struct Problem {
  Instance instance;
  Objective objective;
};

// Instance violations plus objective/instance mismatches (edge count, per-user
// owners that are not the online endpoint).
std::vector<std::string> ValidateProblem(const Problem& problem);

enum class SyntheticKind { kCoverage, kBudgetAdditive };

std::string_view SyntheticKindName(SyntheticKind kind);
// Accepts "coverage", "budget-additive" and "budget_additive".
std::optional<SyntheticKind> ParseSyntheticKind(std::string_view name);

// Random instances at the experiment scale. Both kinds give every online type
// a rate drawn uniformly from (0, 1] and 1 to 10 distinct offline neighbors.
//   coverage: |U| = 40, |V| = 200, T = 1000; every vertex carries 1 to 10
//     features from [1000], an edge covers the union of its endpoints'
//     features, feature weights are uniform on [0, 1].
//   budget-additive: |U| = 100, |V| = 200, T = 200, w_e uniform on [0, 1],
//     B = 50.
// Capacities and eta are 1.
Problem GenerateSynthetic(SyntheticKind kind, uint64_t seed);

// Versioned text format, one record per line:
//   osbm-instance 1
//   horizon <T>
//   eta <eta>
//   u <id> <capacity>            (one per offline vertex)
//   v <id> <rate>                (one per online type)
//   e <id> <u id> <v id>         (one per edge)
//   objective <kind>
//   budget <B>                   (budget-additive)
//   features <g>                 (coverage kinds)
//   w <edge id> <weight>         (linear, budget-additive)
//   fw <feature> <weight>        (coverage)
//   q <edge id> <k> <z1> ... <zk>  (coverage kinds)
//   uw <v id> <w_0> ... <w_g-1>  (per-user coverage)
// Reals are written with 17 significant digits so a round trip is lossless.
// Ids are whitespace-free tokens.
void WriteProblem(const Problem& problem, std::ostream& out);
// Throws std::invalid_argument naming the offending line.
Problem ReadProblem(std::istream& in);

void SaveProblem(const Problem& problem, const std::string& path);
Problem LoadProblem(const std::string& path);

// Offline result artifact keyed by edge id.
struct SolutionArtifact {
  std::string solver;  // "continuous-greedy" or "lp"
  FractionalSolution x;
  Estimate value;
  int steps = 0;
  int grad_samples = 0;
  uint64_t seed = 0;
};

void WriteSolution(const Instance& instance, const SolutionArtifact& solution,
                   std::ostream& out);
SolutionArtifact ReadSolution(const Instance& instance, std::istream& in);
void SaveSolution(const Instance& instance, const SolutionArtifact& solution,
                  const std::string& path);
SolutionArtifact LoadSolution(const Instance& instance,
                              const std::string& path);

// "%.17g" rendering used by every text artifact.
std::string FormatReal(double value);

}  // namespace osbm

#endif  // OSBM_PROBLEM_H_
