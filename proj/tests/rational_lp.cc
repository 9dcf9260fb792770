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

#include "rational_lp.h"

#include <cmath>

namespace osbm::testing {
namespace {

Rational Exact(double value) {
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // 53-bit integer mantissa times a power of two.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational result(scaled);
  exponent -= 53;
  Rational power(1);
  for (int i = 0; i < std::abs(exponent); ++i) power *= 2;
  if (exponent >= 0) return Rational(result * power);
  return Rational(result / power);
}

class Tableau {
 public:
  Tableau(int rows, int columns)
      : a_(rows, std::vector<Rational>(columns)),
        rhs_(rows),
        cost_(columns),
        basis_(rows) {}

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  // Reduced costs: z = value_ + sum_j cost_[j] x_j over nonbasic j.
  std::vector<Rational> cost_;
  Rational value_;
  std::vector<int> basis_;
  std::vector<bool> blocked_;

  void Pivot(int row, int column) {
    const Rational pivot = a_[row][column];
    for (Rational& entry : a_[row]) entry /= pivot;
    rhs_[row] /= pivot;
    for (int i = 0; i < static_cast<int>(a_.size()); ++i) {
      if (i == row || a_[i][column] == 0) continue;
      const Rational factor = a_[i][column];
      for (size_t j = 0; j < a_[i].size(); ++j) {
        if (a_[row][j] != 0) a_[i][j] -= factor * a_[row][j];
      }
      rhs_[i] -= factor * rhs_[row];
    }
    if (cost_[column] != 0) {
      const Rational factor = cost_[column];
      for (size_t j = 0; j < cost_.size(); ++j) {
        if (a_[row][j] != 0) cost_[j] -= factor * a_[row][j];
      }
      value_ += factor * rhs_[row];
    }
    basis_[row] = column;
  }

  // Bland's rule to optimality; false when unbounded.
  bool Optimize() {
    while (true) {
      int entering = -1;
      for (size_t j = 0; j < cost_.size(); ++j) {
        if (!blocked_[j] && cost_[j] > 0) {
          entering = static_cast<int>(j);
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      Rational best;
      for (int i = 0; i < static_cast<int>(a_.size()); ++i) {
        if (a_[i][entering] <= 0) continue;
        const Rational ratio = rhs_[i] / a_[i][entering];
        if (leaving < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving < 0) return false;
      Pivot(leaving, entering);
    }
  }
};

}  // namespace

RationalResult SolveRational(const LinearProgram& lp) {
  const int n = lp.num_columns();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const LpConstraint& constraint : lp.constraints) {
    std::vector<Rational> row(n);
    for (const LpTerm& term : constraint.terms) row[term.column] += Exact(term.coef);
    rows.push_back(std::move(row));
    rhs.push_back(Exact(constraint.rhs));
  }
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.upper[j])) {
      std::vector<Rational> row(n);
      row[j] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(Exact(lp.upper[j]));
    }
  }
  const int m = static_cast<int>(rows.size());
  // Columns: originals, slacks, auxiliary x0.
  const int aux = n + m;
  Tableau t(m, n + m + 1);
  t.blocked_.assign(n + m + 1, false);
  int most_negative = -1;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a_[i][j] = rows[i][j];
    t.a_[i][n + i] = 1;
    t.a_[i][aux] = -1;
    t.rhs_[i] = rhs[i];
    t.basis_[i] = n + i;
    if (rhs[i] < 0 && (most_negative < 0 || rhs[i] < rhs[most_negative])) {
      most_negative = i;
    }
  }
  if (most_negative >= 0) {
    t.cost_[aux] = -1;
    t.Pivot(most_negative, aux);
    t.Optimize();
    if (t.value_ < 0) return {LpStatus::kInfeasible, 0, {}};
    for (int i = 0; i < m; ++i) {
      if (t.basis_[i] != aux) continue;
      for (int j = 0; j < n + m; ++j) {
        if (t.a_[i][j] != 0) {
          t.Pivot(i, j);
          break;
        }
      }
    }
  }
  t.blocked_[aux] = true;
  for (int i = 0; i < m; ++i) t.a_[i][aux] = 0;
  std::fill(t.cost_.begin(), t.cost_.end(), Rational(0));
  t.value_ = 0;
  for (int j = 0; j < n; ++j) t.cost_[j] = Exact(lp.objective[j]);
  for (int i = 0; i < m; ++i) {
    const int k = t.basis_[i];
    if (k >= n + m || t.cost_[k] == 0) continue;
    const Rational factor = t.cost_[k];
    for (int j = 0; j < n + m + 1; ++j) t.cost_[j] -= factor * t.a_[i][j];
    t.value_ += factor * t.rhs_[i];
  }
  if (!t.Optimize()) return {LpStatus::kUnbounded, 0, {}};
  RationalResult result;
  result.status = LpStatus::kOptimal;
  result.objective = t.value_;
  result.x.assign(n, 0);
  for (int i = 0; i < m; ++i) {
    if (t.basis_[i] < n) result.x[t.basis_[i]] = t.rhs_[i];
  }
  return result;
}

LinearProgram RandomSmallLp(Rng& rng) {
  LinearProgram lp;
  const int n = rng.UniformInt(1, 6);
  const int m = rng.UniformInt(1, 5);
  for (int j = 0; j < n; ++j) {
    const double upper =
        rng.Bernoulli(0.25) ? kInfinity : rng.UniformInt(1, 10) / 2.0;
    lp.AddColumn(rng.UniformInt(-4, 10) / 2.0, upper);
  }
  for (int i = 0; i < m; ++i) {
    LpConstraint row;
    for (int j = 0; j < n; ++j) {
      if (rng.Bernoulli(0.35)) continue;
      const int coef = rng.UniformInt(-6, 10);
      if (coef != 0) row.terms.push_back({j, coef / 2.0});
    }
    row.rhs = rng.UniformInt(-4, 20) / 2.0;
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

}  // namespace osbm::testing
