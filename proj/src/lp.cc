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

#include "osbm/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

namespace osbm {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kCostTolerance = 1e-9;
constexpr double kDropTolerance = 1e-13;
constexpr double kTieTolerance = 1e-12;
// Consecutive degenerate pivots before Dantzig pricing hands over to Bland.
constexpr int kStallLimit = 50;

enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper };

// Dense tableau B^-1 [A | I | artificials] with basic values kept separately.
// Columns: [0, n) structural, [n, n + r) slacks, then artificials.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SolveOptions& options)
      : lp_(lp),
        options_(options),
        rows_(lp.num_rows()),
        structural_(lp.num_columns()) {
    for (int i = 0; i < rows_; ++i) {
      if (lp.constraints[i].rhs < 0.0) ++artificials_;
    }
    cols_ = structural_ + rows_ + artificials_;
    tableau_.assign(static_cast<size_t>(rows_) * cols_, 0.0);
    upper_.assign(cols_, kInfinity);
    state_.assign(cols_, VarState::kAtLower);
    basis_.assign(rows_, -1);
    beta_.assign(rows_, 0.0);
    for (int j = 0; j < structural_; ++j) upper_[j] = lp.upper[j];

    int next_artificial = structural_ + rows_;
    for (int i = 0; i < rows_; ++i) {
      const LpConstraint& row = lp.constraints[i];
      const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
      for (const LpTerm& term : row.terms) {
        at(i, term.column) += sign * term.coef;
      }
      at(i, structural_ + i) = sign;
      beta_[i] = sign * row.rhs;
      if (row.rhs < 0.0) {
        at(i, next_artificial) = 1.0;
        basis_[i] = next_artificial++;
      } else {
        basis_[i] = structural_ + i;
      }
      state_[basis_[i]] = VarState::kBasic;
    }
    iteration_limit_ = options.max_iterations > 0
                           ? options.max_iterations
                           : 100 * (rows_ + cols_) + 1000;
  }

  LpSolution Run() {
    LpSolution solution;
    if (artificials_ > 0) {
      cost_.assign(cols_, 0.0);
      for (int j = structural_ + rows_; j < cols_; ++j) cost_[j] = -1.0;
      ComputeReducedCosts();
      Iterate();
      double infeasibility = 0.0;
      for (int i = 0; i < rows_; ++i) {
        if (IsArtificial(basis_[i])) infeasibility += beta_[i];
      }
      if (infeasibility > kLpTolerance * (1.0 + MaxAbsRhs())) {
        solution.status = LpStatus::kInfeasible;
        solution.iterations = iterations_;
        return solution;
      }
      DriveOutArtificials();
    }
    cost_.assign(cols_, 0.0);
    for (int j = 0; j < structural_; ++j) cost_[j] = lp_.objective[j];
    ComputeReducedCosts();
    if (!Iterate()) {
      solution.status = LpStatus::kUnbounded;
      solution.iterations = iterations_;
      return solution;
    }
    solution.status = LpStatus::kOptimal;
    solution.iterations = iterations_;
    solution.x.assign(structural_, 0.0);
    for (int j = 0; j < structural_; ++j) {
      if (state_[j] == VarState::kAtUpper) solution.x[j] = upper_[j];
    }
    for (int i = 0; i < rows_; ++i) {
      const int j = basis_[i];
      if (j < structural_) solution.x[j] = std::clamp(beta_[i], 0.0, upper_[j]);
    }
    for (int j = 0; j < structural_; ++j) {
      solution.objective += lp_.objective[j] * solution.x[j];
    }
    solution.duals.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      solution.duals[i] = -reduced_[structural_ + i];
    }
    return solution;
  }

 private:
  double& at(int i, int j) { return tableau_[static_cast<size_t>(i) * cols_ + j]; }
  double* row(int i) { return &tableau_[static_cast<size_t>(i) * cols_]; }

  bool IsArtificial(int j) const { return j >= structural_ + rows_; }

  double MaxAbsRhs() const {
    double m = 0.0;
    for (const LpConstraint& c : lp_.constraints) m = std::max(m, std::abs(c.rhs));
    return m;
  }

  void ComputeReducedCosts() {
    reduced_ = cost_;
    for (int i = 0; i < rows_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* r = row(i);
      for (int j = 0; j < cols_; ++j) reduced_[j] -= cb * r[j];
    }
    for (int i = 0; i < rows_; ++i) reduced_[basis_[i]] = 0.0;
  }

  bool Eligible(int j) const {
    switch (state_[j]) {
      case VarState::kBasic:
        return false;
      case VarState::kAtLower:
        return upper_[j] > 0.0 && reduced_[j] > kCostTolerance;
      case VarState::kAtUpper:
        return reduced_[j] < -kCostTolerance;
    }
    return false;
  }

  int ChooseEntering(bool bland) const {
    if (bland) {
      for (int j = 0; j < cols_; ++j) {
        if (Eligible(j)) return j;
      }
      return -1;
    }
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < cols_; ++j) {
      if (!Eligible(j)) continue;
      const double score = std::abs(reduced_[j]);
      if (score > best_score) {
        best = j;
        best_score = score;
      }
    }
    return best;
  }

  // Runs simplex iterations on the current costs. Returns false when the
  // objective is unbounded.
  bool Iterate() {
    int stalled = 0;
    while (true) {
      if (++iterations_ > iteration_limit_) {
        throw std::runtime_error("simplex iteration limit exceeded");
      }
      const bool bland = options_.pricing == PricingRule::kBland ||
                         stalled >= kStallLimit;
      const int entering = ChooseEntering(bland);
      if (entering < 0) return true;
      const double sigma =
          state_[entering] == VarState::kAtLower ? 1.0 : -1.0;

      // Ratio test; a bound flip of the entering column wins ties.
      double step = upper_[entering];
      int leave = -1;
      for (int i = 0; i < rows_; ++i) {
        const double a = sigma * at(i, entering);
        double limit;
        if (a > kPivotTolerance) {
          limit = beta_[i] / a;
        } else if (a < -kPivotTolerance && upper_[basis_[i]] < kInfinity) {
          limit = (upper_[basis_[i]] - beta_[i]) / -a;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        if (limit < step - kTieTolerance ||
            (leave >= 0 && limit <= step + kTieTolerance &&
             basis_[i] < basis_[leave])) {
          step = limit;
          leave = i;
        }
      }
      if (step == kInfinity) return false;
      stalled = step > kTieTolerance ? 0 : stalled + 1;

      for (int i = 0; i < rows_; ++i) {
        const double a = at(i, entering);
        if (a != 0.0) beta_[i] -= sigma * step * a;
      }
      if (leave < 0) {
        state_[entering] = sigma > 0 ? VarState::kAtUpper : VarState::kAtLower;
        continue;
      }
      const int leaving = basis_[leave];
      const double entering_value =
          (state_[entering] == VarState::kAtLower ? 0.0 : upper_[entering]) +
          sigma * step;
      state_[leaving] = sigma * at(leave, entering) > 0.0 ? VarState::kAtLower
                                                         : VarState::kAtUpper;
      if (state_[leaving] == VarState::kAtUpper &&
          upper_[leaving] == kInfinity) {
        state_[leaving] = VarState::kAtLower;
      }
      beta_[leave] = entering_value;
      basis_[leave] = entering;
      state_[entering] = VarState::kBasic;
      Pivot(leave, entering);
    }
  }

  void Pivot(int r, int q) {
    double* pivot_row = row(r);
    const double inv = 1.0 / pivot_row[q];
    nonzeros_.clear();
    for (int j = 0; j < cols_; ++j) {
      if (pivot_row[j] == 0.0) continue;
      pivot_row[j] *= inv;
      if (std::abs(pivot_row[j]) < kDropTolerance) {
        pivot_row[j] = 0.0;
      } else {
        nonzeros_.push_back(j);
      }
    }
    pivot_row[q] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* target = row(i);
      const double factor = target[q];
      if (factor == 0.0) continue;
      for (int j : nonzeros_) {
        double v = target[j] - factor * pivot_row[j];
        target[j] = std::abs(v) < kDropTolerance ? 0.0 : v;
      }
      target[q] = 0.0;
    }
    const double factor = reduced_[q];
    if (factor != 0.0) {
      for (int j : nonzeros_) reduced_[j] -= factor * pivot_row[j];
      reduced_[q] = 0.0;
    }
  }

  // After phase one, swaps remaining zero-valued artificials out of the basis
  // and fixes every artificial at zero.
  void DriveOutArtificials() {
    for (int i = 0; i < rows_; ++i) {
      if (!IsArtificial(basis_[i])) continue;
      int replacement = -1;
      for (int j = 0; j < structural_ + rows_; ++j) {
        if (state_[j] != VarState::kBasic &&
            std::abs(at(i, j)) > kPivotTolerance) {
          replacement = j;
          break;
        }
      }
      if (replacement < 0) continue;  // Redundant row.
      const int leaving = basis_[i];
      beta_[i] = state_[replacement] == VarState::kAtUpper
                     ? upper_[replacement]
                     : 0.0;
      state_[leaving] = VarState::kAtLower;
      basis_[i] = replacement;
      state_[replacement] = VarState::kBasic;
      Pivot(i, replacement);
    }
    for (int j = structural_ + rows_; j < cols_; ++j) upper_[j] = 0.0;
  }

  const LinearProgram& lp_;
  SolveOptions options_;
  int rows_;
  int structural_;
  int artificials_ = 0;
  int cols_ = 0;
  std::vector<double> tableau_;
  std::vector<double> upper_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<double> beta_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<int> nonzeros_;
  int iterations_ = 0;
  int iteration_limit_ = 0;
};

void CheckWellFormed(const LinearProgram& lp) {
  if (lp.upper.size() != lp.objective.size()) {
    throw std::invalid_argument("LP bound vector length differs from columns");
  }
  for (int j = 0; j < lp.num_columns(); ++j) {
    if (!std::isfinite(lp.objective[j]) || std::isnan(lp.upper[j]) ||
        lp.upper[j] < 0.0) {
      throw std::invalid_argument("LP column " + std::to_string(j) +
                                  " has a non-finite cost or negative bound");
    }
  }
  for (const LpConstraint& row : lp.constraints) {
    if (!std::isfinite(row.rhs)) {
      throw std::invalid_argument("LP row has a non-finite rhs");
    }
    for (const LpTerm& term : row.terms) {
      if (term.column < 0 || term.column >= lp.num_columns() ||
          !std::isfinite(term.coef)) {
        throw std::invalid_argument("LP row references a bad column or coef");
      }
    }
  }
}

std::string FormatNumber(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string MpsName(char prefix, int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%c%07d", prefix, index + 1);
  return buffer;
}

}  // namespace

int LinearProgram::AddColumn(double cost, double upper_bound) {
  objective.push_back(cost);
  upper.push_back(upper_bound);
  return num_columns() - 1;
}

LpSolution Solve(const LinearProgram& lp, const SolveOptions& options) {
  CheckWellFormed(lp);
  Simplex simplex(lp, options);
  return simplex.Run();
}

std::vector<std::string> AuditSolution(const LinearProgram& lp,
                                       const LpSolution& solution,
                                       double tolerance) {
  std::vector<std::string> failures;
  if (solution.status != LpStatus::kOptimal) {
    failures.push_back("solution is not optimal");
    return failures;
  }
  const int n = lp.num_columns();
  const int r = lp.num_rows();
  auto scaled = [&](double magnitude) {
    return tolerance * (1.0 + std::abs(magnitude));
  };
  for (int j = 0; j < n; ++j) {
    if (solution.x[j] < -tolerance || solution.x[j] > lp.upper[j] + scaled(lp.upper[j] == kInfinity ? 0.0 : lp.upper[j])) {
      failures.push_back("column " + std::to_string(j) + " violates bounds");
    }
  }
  std::vector<double> reduced = lp.objective;
  double dual_objective = 0.0;
  for (int i = 0; i < r; ++i) {
    const LpConstraint& row = lp.constraints[i];
    double activity = 0.0;
    double magnitude = std::abs(row.rhs);
    for (const LpTerm& term : row.terms) {
      activity += term.coef * solution.x[term.column];
      magnitude += std::abs(term.coef * solution.x[term.column]);
      reduced[term.column] -= solution.duals[i] * term.coef;
    }
    const double slack = row.rhs - activity;
    if (slack < -scaled(magnitude)) {
      failures.push_back("row " + std::to_string(i) + " violated by " +
                         FormatNumber(-slack));
    }
    if (solution.duals[i] < -tolerance) {
      failures.push_back("row " + std::to_string(i) + " has a negative dual");
    }
    if (std::abs(solution.duals[i] * slack) > scaled(magnitude)) {
      failures.push_back("row " + std::to_string(i) +
                         " breaks complementary slackness");
    }
    dual_objective += solution.duals[i] * row.rhs;
  }
  for (int j = 0; j < n; ++j) {
    const double x = solution.x[j];
    const bool at_lower = x <= tolerance;
    const bool at_upper = lp.upper[j] < kInfinity && x >= lp.upper[j] - tolerance;
    const double d = reduced[j];
    const double tol = scaled(lp.objective[j]);
    if ((!at_lower && d < -tol) || (!at_upper && d > tol)) {
      failures.push_back("column " + std::to_string(j) +
                         " has an improving reduced cost " + FormatNumber(d));
    }
    if (d > 0.0 && lp.upper[j] < kInfinity) dual_objective += d * lp.upper[j];
  }
  if (std::abs(dual_objective - solution.objective) >
      tolerance * (1.0 + std::abs(solution.objective)) * 10.0) {
    failures.push_back("duality gap " +
                       FormatNumber(dual_objective - solution.objective));
  }
  return failures;
}

LinearProgram BuildMatchingLmo(const Instance& instance,
                               std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != instance.num_edges()) {
    throw std::invalid_argument("weight vector length differs from m");
  }
  LinearProgram lp;
  lp.objective.assign(weights.begin(), weights.end());
  lp.upper.assign(instance.num_edges(), 1.0);
  for (int v = 0; v < instance.num_online(); ++v) {
    LpConstraint row;
    for (int e : instance.online_edges(v)) row.terms.push_back({e, 1.0});
    row.rhs = instance.eta() * instance.rate(v);
    lp.constraints.push_back(std::move(row));
  }
  for (int u = 0; u < instance.num_offline(); ++u) {
    LpConstraint row;
    for (int e : instance.offline_edges(u)) row.terms.push_back({e, 1.0});
    row.rhs = instance.capacity(u);
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

LinearProgram BuildSpecialLp(const Instance& instance, const Objective& f) {
  const int m = instance.num_edges();
  if (f.num_edges() != m) {
    throw std::invalid_argument("objective and instance differ in edge count");
  }
  if (f.kind() == ObjectiveKind::kLinear) {
    return BuildMatchingLmo(instance, f.edge_weights());
  }
  std::vector<double> zero(m, 0.0);
  LinearProgram lp = BuildMatchingLmo(instance, zero);
  switch (f.kind()) {
    case ObjectiveKind::kBudgetAdditive: {
      // max gamma, gamma <= sum w_e x_e, gamma <= B.
      const int gamma = lp.AddColumn(1.0, f.budget());
      LpConstraint row;
      row.terms.push_back({gamma, 1.0});
      for (int e = 0; e < m; ++e) {
        if (f.edge_weights()[e] != 0.0) {
          row.terms.push_back({e, -f.edge_weights()[e]});
        }
      }
      lp.constraints.push_back(std::move(row));
      return lp;
    }
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage: {
      if (f.kind() == ObjectiveKind::kPerUserCoverage) {
        for (int e = 0; e < m; ++e) {
          if (f.edge_user()[e] != instance.edge(e).v) {
            throw std::invalid_argument(
                "per-user coverage user differs from the edge's online end");
          }
        }
      }
      // One gamma per coverable element in [0, 1]; uncoverable ones are 0.
      std::map<int, std::vector<int>> covering;
      for (int e = 0; e < m; ++e) {
        for (int k : f.cover_set(e)) covering[k].push_back(e);
      }
      for (const auto& [element, edges] : covering) {
        const int gamma = lp.AddColumn(f.cover_weight(element), 1.0);
        LpConstraint row;
        row.terms.push_back({gamma, 1.0});
        for (int e : edges) row.terms.push_back({e, -1.0});
        lp.constraints.push_back(std::move(row));
      }
      return lp;
    }
    case ObjectiveKind::kLinear:
      break;
  }
  return lp;
}

std::vector<std::string> CheckMatchingPolytope(const Instance& instance,
                                               std::span<const double> x,
                                               double tolerance) {
  std::vector<std::string> violations;
  if (static_cast<int>(x.size()) != instance.num_edges()) {
    violations.push_back("solution length differs from m");
    return violations;
  }
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (!(x[e] >= -tolerance && x[e] <= 1.0 + tolerance)) {
      violations.push_back("x of edge '" + instance.edge(e).id +
                           "' outside [0, 1]");
    }
  }
  for (int v = 0; v < instance.num_online(); ++v) {
    double sum = 0.0;
    for (int e : instance.online_edges(v)) sum += x[e];
    if (sum > instance.eta() * instance.rate(v) + tolerance) {
      violations.push_back("online type '" + instance.online()[v].id +
                           "' over its rate by " +
                           FormatNumber(sum - instance.eta() * instance.rate(v)));
    }
  }
  for (int u = 0; u < instance.num_offline(); ++u) {
    double sum = 0.0;
    for (int e : instance.offline_edges(u)) sum += x[e];
    if (sum > instance.capacity(u) + tolerance) {
      violations.push_back("offline vertex '" + instance.offline()[u].id +
                           "' over capacity by " +
                           FormatNumber(sum - instance.capacity(u)));
    }
  }
  return violations;
}

void WriteMps(const LinearProgram& lp, const std::string& name,
              std::ostream& out) {
  std::vector<std::vector<LpTerm>> by_column(lp.num_columns());
  for (int i = 0; i < lp.num_rows(); ++i) {
    for (const LpTerm& term : lp.constraints[i].terms) {
      by_column[term.column].push_back({i, term.coef});
    }
  }
  out << "NAME          " << name << "\n";
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  OBJ\n";
  for (int i = 0; i < lp.num_rows(); ++i) out << " L  " << MpsName('R', i) << "\n";
  out << "COLUMNS\n";
  for (int j = 0; j < lp.num_columns(); ++j) {
    const std::string column = MpsName('C', j);
    if (lp.objective[j] != 0.0) {
      out << "    " << column << "  OBJ       " << FormatNumber(lp.objective[j])
          << "\n";
    }
    for (const LpTerm& term : by_column[j]) {
      out << "    " << column << "  " << MpsName('R', term.column) << "  "
          << FormatNumber(term.coef) << "\n";
    }
  }
  out << "RHS\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.constraints[i].rhs != 0.0) {
      out << "    RHS       " << MpsName('R', i) << "  "
          << FormatNumber(lp.constraints[i].rhs) << "\n";
    }
  }
  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_columns(); ++j) {
    if (lp.upper[j] == kInfinity) {
      out << " PL BND       " << MpsName('C', j) << "\n";
    } else {
      out << " UP BND       " << MpsName('C', j) << "  "
          << FormatNumber(lp.upper[j]) << "\n";
    }
  }
  out << "ENDATA\n";
}

}  // namespace osbm
