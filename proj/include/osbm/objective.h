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

#ifndef OSBM_OBJECTIVE_H_
#define OSBM_OBJECTIVE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace osbm {

enum class ObjectiveKind {
  kLinear,
  kCoverage,
  kBudgetAdditive,
  // Sum over online vertices of a weighted coverage of the features carried by
  // that vertex's matched edges.
  kPerUserCoverage,
};

std::string_view ObjectiveKindName(ObjectiveKind kind);
std::optional<ObjectiveKind> ParseObjectiveKind(std::string_view name);

// Monotone submodular set function over edge indices [0, num_edges), with
// value-oracle access. Immutable and safe to share across threads.
//
// Both coverage kinds are flattened into one representation: each edge covers
// a set of weighted elements. For kPerUserCoverage the element for feature z
// on an edge with online endpoint v is the pair (v, z).
class Objective {
 public:
  Objective() = default;

  static Objective Linear(std::vector<double> edge_weights);
  static Objective BudgetAdditive(std::vector<double> edge_weights,
                                  double budget);
  static Objective Coverage(std::vector<std::vector<int>> edge_features,
                            std::vector<double> feature_weights);
  // `user_feature_weights[v][z]` is the weight of feature z for online vertex
  // v; every row must have the same length g.
  static Objective PerUserCoverage(
      std::vector<std::vector<int>> edge_features, std::vector<int> edge_user,
      std::vector<std::vector<double>> user_feature_weights);

  ObjectiveKind kind() const { return kind_; }
  int num_edges() const { return num_edges_; }

  // Parameters as supplied to the factory.
  const std::vector<double>& edge_weights() const { return edge_weights_; }
  double budget() const { return budget_; }
  const std::vector<std::vector<int>>& edge_features() const {
    return edge_features_;
  }
  const std::vector<double>& feature_weights() const {
    return feature_weights_;
  }
  const std::vector<int>& edge_user() const { return edge_user_; }
  const std::vector<std::vector<double>>& user_feature_weights() const {
    return user_feature_weights_;
  }
  // Number of distinct features g (coverage kinds only).
  int num_features() const { return num_features_; }

  // f(S). Repeated indices count once. Throws std::out_of_range on an unknown
  // edge index.
  double Eval(std::span<const int> edges) const;
  // f of the support of a 0/1 vector of length num_edges().
  double EvalIndicator(std::span<const uint8_t> indicator) const;
  // f(S + e) - f(S). Throws std::invalid_argument when e is already in S.
  double MarginalGain(std::span<const int> set, int edge) const;

  // out[e] = f(R + e) - f(R - e) for every edge, where R is the support of
  // `indicator`. This is the coordinate partial derivative of the multilinear
  // extension evaluated at one sampled R.
  void PairedGains(std::span<const uint8_t> indicator,
                   std::span<double> out) const;

  // Flattened coverage structure.
  int num_cover_elements() const {
    return static_cast<int>(cover_weights_.size());
  }
  std::span<const int> cover_set(int edge) const { return cover_sets_[edge]; }
  double cover_weight(int element) const { return cover_weights_[element]; }

 private:
  friend class ObjectiveState;

  void CheckEdge(int edge) const;

  ObjectiveKind kind_ = ObjectiveKind::kLinear;
  int num_edges_ = 0;
  std::vector<double> edge_weights_;
  double budget_ = 0.0;
  std::vector<std::vector<int>> edge_features_;
  std::vector<double> feature_weights_;
  std::vector<int> edge_user_;
  std::vector<std::vector<double>> user_feature_weights_;
  int num_features_ = 0;

  std::vector<std::vector<int>> cover_sets_;
  std::vector<double> cover_weights_;
};

// Incremental evaluator holding a current set S. Gains are O(1) for the
// additive kinds and O(|cover set|) for coverage kinds. The objective must
// outlive the state.
class ObjectiveState {
 public:
  explicit ObjectiveState(const Objective& objective);

  double value() const;
  bool Contains(int edge) const { return multiplicity_[edge] > 0; }
  // f(S + e) - f(S); zero when e is already in S.
  double Gain(int edge) const;
  // Adding an edge already present only bumps its multiplicity.
  void Add(int edge);
  void Remove(int edge);
  void Clear();

 private:
  const Objective* objective_;
  std::vector<int> multiplicity_;
  double weight_sum_ = 0.0;
  std::vector<int> cover_count_;
  double covered_weight_ = 0.0;
};

}  // namespace osbm

#endif  // OSBM_OBJECTIVE_H_
