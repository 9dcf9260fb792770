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

#include "osbm/objective.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace osbm {
namespace {

void CheckWeights(const std::vector<double>& weights, const char* what) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  " must be finite and nonnegative");
    }
  }
}

std::vector<std::vector<int>> NormalizeSets(
    std::vector<std::vector<int>> sets, int universe) {
  for (std::vector<int>& set : sets) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (!set.empty() && (set.front() < 0 || set.back() >= universe)) {
      throw std::invalid_argument("feature index outside [0, g)");
    }
  }
  return sets;
}

}  // namespace

std::string_view ObjectiveKindName(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kLinear:
      return "linear";
    case ObjectiveKind::kCoverage:
      return "coverage";
    case ObjectiveKind::kBudgetAdditive:
      return "budget-additive";
    case ObjectiveKind::kPerUserCoverage:
      return "per-user-coverage";
  }
  return "unknown";
}

std::optional<ObjectiveKind> ParseObjectiveKind(std::string_view name) {
  if (name == "linear") return ObjectiveKind::kLinear;
  if (name == "coverage") return ObjectiveKind::kCoverage;
  if (name == "budget-additive" || name == "budget_additive") {
    return ObjectiveKind::kBudgetAdditive;
  }
  if (name == "per-user-coverage" || name == "per_user_coverage") {
    return ObjectiveKind::kPerUserCoverage;
  }
  return std::nullopt;
}

Objective Objective::Linear(std::vector<double> edge_weights) {
  CheckWeights(edge_weights, "edge weights");
  Objective f;
  f.kind_ = ObjectiveKind::kLinear;
  f.num_edges_ = static_cast<int>(edge_weights.size());
  f.edge_weights_ = std::move(edge_weights);
  return f;
}

Objective Objective::BudgetAdditive(std::vector<double> edge_weights,
                                    double budget) {
  CheckWeights(edge_weights, "edge weights");
  if (!(budget >= 0.0) || std::isnan(budget)) {
    throw std::invalid_argument("budget must be nonnegative");
  }
  Objective f;
  f.kind_ = ObjectiveKind::kBudgetAdditive;
  f.num_edges_ = static_cast<int>(edge_weights.size());
  f.edge_weights_ = std::move(edge_weights);
  f.budget_ = budget;
  return f;
}

Objective Objective::Coverage(std::vector<std::vector<int>> edge_features,
                              std::vector<double> feature_weights) {
  CheckWeights(feature_weights, "feature weights");
  Objective f;
  f.kind_ = ObjectiveKind::kCoverage;
  f.num_features_ = static_cast<int>(feature_weights.size());
  f.edge_features_ = NormalizeSets(std::move(edge_features), f.num_features_);
  f.num_edges_ = static_cast<int>(f.edge_features_.size());
  f.feature_weights_ = std::move(feature_weights);
  f.cover_sets_ = f.edge_features_;
  f.cover_weights_ = f.feature_weights_;
  return f;
}

Objective Objective::PerUserCoverage(
    std::vector<std::vector<int>> edge_features, std::vector<int> edge_user,
    std::vector<std::vector<double>> user_feature_weights) {
  if (edge_features.size() != edge_user.size()) {
    throw std::invalid_argument("edge_features and edge_user differ in size");
  }
  const int num_users = static_cast<int>(user_feature_weights.size());
  const int g =
      num_users > 0 ? static_cast<int>(user_feature_weights[0].size()) : 0;
  for (const std::vector<double>& row : user_feature_weights) {
    if (static_cast<int>(row.size()) != g) {
      throw std::invalid_argument("user feature weight rows differ in length");
    }
    CheckWeights(row, "user feature weights");
  }
  Objective f;
  f.kind_ = ObjectiveKind::kPerUserCoverage;
  f.num_features_ = g;
  f.edge_features_ = NormalizeSets(std::move(edge_features), g);
  f.num_edges_ = static_cast<int>(f.edge_features_.size());
  f.cover_sets_.resize(f.num_edges_);
  for (int e = 0; e < f.num_edges_; ++e) {
    const int user = edge_user[e];
    if (user < 0 || user >= num_users) {
      throw std::invalid_argument("edge user index out of range");
    }
    for (int z : f.edge_features_[e]) f.cover_sets_[e].push_back(user * g + z);
  }
  f.cover_weights_.reserve(static_cast<size_t>(num_users) * g);
  for (const std::vector<double>& row : user_feature_weights) {
    f.cover_weights_.insert(f.cover_weights_.end(), row.begin(), row.end());
  }
  f.edge_user_ = std::move(edge_user);
  f.user_feature_weights_ = std::move(user_feature_weights);
  return f;
}

void Objective::CheckEdge(int edge) const {
  if (edge < 0 || edge >= num_edges_) {
    throw std::out_of_range("unknown edge index " + std::to_string(edge));
  }
}

double Objective::Eval(std::span<const int> edges) const {
  ObjectiveState state(*this);
  for (int e : edges) {
    CheckEdge(e);
    state.Add(e);
  }
  return state.value();
}

double Objective::EvalIndicator(std::span<const uint8_t> indicator) const {
  ObjectiveState state(*this);
  for (int e = 0; e < num_edges_; ++e) {
    if (indicator[e]) state.Add(e);
  }
  return state.value();
}

double Objective::MarginalGain(std::span<const int> set, int edge) const {
  CheckEdge(edge);
  ObjectiveState state(*this);
  for (int e : set) {
    CheckEdge(e);
    if (e == edge) {
      throw std::invalid_argument("marginal gain of an edge already in the set");
    }
    state.Add(e);
  }
  return state.Gain(edge);
}

void Objective::PairedGains(std::span<const uint8_t> indicator,
                            std::span<double> out) const {
  switch (kind_) {
    case ObjectiveKind::kLinear:
      std::copy(edge_weights_.begin(), edge_weights_.end(), out.begin());
      return;
    case ObjectiveKind::kBudgetAdditive: {
      double sum = 0.0;
      for (int e = 0; e < num_edges_; ++e) {
        if (indicator[e]) sum += edge_weights_[e];
      }
      for (int e = 0; e < num_edges_; ++e) {
        const double without = indicator[e] ? sum - edge_weights_[e] : sum;
        out[e] = std::min(without + edge_weights_[e], budget_) -
                 std::min(without, budget_);
      }
      return;
    }
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage: {
      std::vector<int> count(cover_weights_.size(), 0);
      for (int e = 0; e < num_edges_; ++e) {
        if (!indicator[e]) continue;
        for (int k : cover_sets_[e]) ++count[k];
      }
      for (int e = 0; e < num_edges_; ++e) {
        // Elements covered only by e itself (when present) or by nothing.
        const int sole = indicator[e] ? 1 : 0;
        double gain = 0.0;
        for (int k : cover_sets_[e]) {
          if (count[k] == sole) gain += cover_weights_[k];
        }
        out[e] = gain;
      }
      return;
    }
  }
}

ObjectiveState::ObjectiveState(const Objective& objective)
    : objective_(&objective),
      multiplicity_(objective.num_edges(), 0),
      cover_count_(objective.cover_weights_.size(), 0) {}

double ObjectiveState::value() const {
  switch (objective_->kind_) {
    case ObjectiveKind::kLinear:
      return weight_sum_;
    case ObjectiveKind::kBudgetAdditive:
      return std::min(weight_sum_, objective_->budget_);
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage:
      return covered_weight_;
  }
  return 0.0;
}

double ObjectiveState::Gain(int edge) const {
  if (multiplicity_[edge] > 0) return 0.0;
  switch (objective_->kind_) {
    case ObjectiveKind::kLinear:
      return objective_->edge_weights_[edge];
    case ObjectiveKind::kBudgetAdditive:
      return std::min(weight_sum_ + objective_->edge_weights_[edge],
                      objective_->budget_) -
             std::min(weight_sum_, objective_->budget_);
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage: {
      double gain = 0.0;
      for (int k : objective_->cover_sets_[edge]) {
        if (cover_count_[k] == 0) gain += objective_->cover_weights_[k];
      }
      return gain;
    }
  }
  return 0.0;
}

void ObjectiveState::Add(int edge) {
  if (multiplicity_[edge]++ > 0) return;
  switch (objective_->kind_) {
    case ObjectiveKind::kLinear:
    case ObjectiveKind::kBudgetAdditive:
      weight_sum_ += objective_->edge_weights_[edge];
      return;
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage:
      for (int k : objective_->cover_sets_[edge]) {
        if (cover_count_[k]++ == 0) {
          covered_weight_ += objective_->cover_weights_[k];
        }
      }
      return;
  }
}

void ObjectiveState::Remove(int edge) {
  if (multiplicity_[edge] == 0) {
    throw std::logic_error("removing an edge that is not in the set");
  }
  if (--multiplicity_[edge] > 0) return;
  switch (objective_->kind_) {
    case ObjectiveKind::kLinear:
    case ObjectiveKind::kBudgetAdditive:
      weight_sum_ -= objective_->edge_weights_[edge];
      return;
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage:
      for (int k : objective_->cover_sets_[edge]) {
        if (--cover_count_[k] == 0) {
          covered_weight_ -= objective_->cover_weights_[k];
        }
      }
      return;
  }
}

void ObjectiveState::Clear() {
  std::fill(multiplicity_.begin(), multiplicity_.end(), 0);
  std::fill(cover_count_.begin(), cover_count_.end(), 0);
  weight_sum_ = 0.0;
  covered_weight_ = 0.0;
}

}  // namespace osbm
