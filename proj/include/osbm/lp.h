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

#ifndef OSBM_LP_H_
#define OSBM_LP_H_

#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "osbm/instance.h"
#include "osbm/objective.h"

namespace osbm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Feasibility / optimality tolerance used by the audits.
inline constexpr double kLpTolerance = 1e-9;

struct LpTerm {
  int column = 0;
  double coef = 0.0;
};

// sum_j terms[j].coef * x[terms[j].column] <= rhs
struct LpConstraint {
  std::vector<LpTerm> terms;
  double rhs = 0.0;
};

// maximize c.x subject to A x <= b, 0 <= x <= upper.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> upper;
  std::vector<LpConstraint> constraints;

  int num_columns() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(constraints.size()); }
  // Appends a column and returns its index.
  int AddColumn(double cost, double upper_bound);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Row duals (nonnegative at optimality for a maximization with <= rows).
  std::vector<double> duals;
  int iterations = 0;
};

enum class PricingRule {
  // Lowest-index improving column throughout.
  kBland,
  // Largest reduced cost, lowest index on ties; falls back to Bland's rule
  // while the solver is stalled on degenerate pivots.
  kDantzig,
};

struct SolveOptions {
  PricingRule pricing = PricingRule::kDantzig;
  // Zero means an automatic limit proportional to the tableau size.
  int max_iterations = 0;
};

// Dense bounded-variable primal simplex, two phases when some rhs is
// negative. Deterministic: all ties go to the lowest index. Throws
// std::runtime_error when the iteration limit is hit.
LpSolution Solve(const LinearProgram& lp, const SolveOptions& options = {});

// Checks primal feasibility, dual feasibility and complementary slackness of an
// optimal solution. Returns human-readable failures; empty means it passed.
std::vector<std::string> AuditSolution(const LinearProgram& lp,
                                       const LpSolution& solution,
                                       double tolerance = kLpTolerance);

// Linear maximization over the b-matching polytope: one variable per edge in
// [0, 1], a row sum_{e at v} x_e <= eta * r_v for each online type and a row
// sum_{e at u} x_e <= C_u for each offline vertex (in that order).
LinearProgram BuildMatchingLmo(const Instance& instance,
                               std::span<const double> weights);

// Epigraph LP for the objectives whose offline relaxation is linear. The first
// num_edges columns are the edge variables; auxiliary columns follow. For a
// linear objective this is BuildMatchingLmo. Throws std::invalid_argument when
// the objective does not fit the instance.
LinearProgram BuildSpecialLp(const Instance& instance, const Objective& f);

// Violations of the matching polytope constraints beyond `tolerance`.
std::vector<std::string> CheckMatchingPolytope(const Instance& instance,
                                               std::span<const double> x,
                                               double tolerance = kLpTolerance);

// Writes the program in MPS layout (maximization via OBJSENSE). Numbers carry
// 17 significant digits, which may overflow the classic 12-character fields.
void WriteMps(const LinearProgram& lp, const std::string& name,
              std::ostream& out);

}  // namespace osbm

#endif  // OSBM_LP_H_
