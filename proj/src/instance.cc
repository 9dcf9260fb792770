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

#include "osbm/instance.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include "osbm/random.h"

namespace osbm {

Instance::Instance(std::vector<OfflineVertex> offline,
                   std::vector<OnlineType> online, std::vector<Edge> edges,
                   int horizon, int eta)
    : offline_(std::move(offline)),
      online_(std::move(online)),
      edges_(std::move(edges)),
      horizon_(horizon),
      eta_(eta),
      offline_adj_(offline_.size()),
      online_adj_(online_.size()) {
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.u < 0 || edge.u >= num_offline() || edge.v < 0 ||
        edge.v >= num_online()) {
      continue;
    }
    offline_adj_[edge.u].push_back(e);
    online_adj_[edge.v].push_back(e);
  }
}

bool Instance::has_integral_rates() const {
  if (num_online() != horizon_) return false;
  for (const OnlineType& type : online_) {
    if (type.rate != 1.0) return false;
  }
  return true;
}

Instance Instance::WithUniformCapacity(int b) const {
  std::vector<OfflineVertex> offline = offline_;
  for (OfflineVertex& vertex : offline) vertex.capacity = b;
  return Instance(std::move(offline), online_, edges_, horizon_, eta_);
}

Instance Instance::WithEta(int eta) const {
  return Instance(offline_, online_, edges_, horizon_, eta);
}

std::vector<std::string> Validate(const Instance& instance) {
  std::vector<std::string> violations;
  if (instance.horizon() < 1) {
    violations.push_back("horizon must be a positive integer");
  }
  if (instance.eta() < 1) {
    violations.push_back("eta must be a positive integer");
  }
  for (const OfflineVertex& vertex : instance.offline()) {
    if (vertex.capacity < 1) {
      violations.push_back("offline vertex '" + vertex.id +
                           "' has capacity below 1");
    }
  }
  double rate_sum = 0.0;
  for (const OnlineType& type : instance.online()) {
    if (!std::isfinite(type.rate) || type.rate <= 0.0 || type.rate > 1.0) {
      violations.push_back("online type '" + type.id +
                           "' has rate outside (0, 1]");
    }
    rate_sum += type.rate;
  }
  // Relative slack absorbs rounding in normalized rate vectors.
  if (instance.horizon() >= 1 &&
      rate_sum > instance.horizon() * (1.0 + 1e-12)) {
    violations.push_back("rates exceed horizon: sum of rates " +
                         std::to_string(rate_sum) + " > T = " +
                         std::to_string(instance.horizon()));
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& edge : instance.edges()) {
    const bool bad_u = edge.u < 0 || edge.u >= instance.num_offline();
    const bool bad_v = edge.v < 0 || edge.v >= instance.num_online();
    if (bad_u || bad_v) {
      violations.push_back("dangling endpoint on edge '" + edge.id + "'");
      continue;
    }
    if (!seen.emplace(edge.u, edge.v).second) {
      violations.push_back("duplicate edge '" + edge.id + "' between '" +
                           instance.offline()[edge.u].id + "' and '" +
                           instance.online()[edge.v].id + "'");
    }
  }
  return violations;
}

ArrivalSequence SampleArrivals(const Instance& instance, uint64_t seed) {
  const int n = instance.num_online();
  std::vector<double> cumulative(n);
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    total += instance.arrival_probability(v);
    cumulative[v] = total;
  }
  Rng rng(seed);
  ArrivalSequence sequence;
  sequence.slots.assign(instance.horizon(), kNoArrival);
  for (int& slot : sequence.slots) {
    const double draw = rng.Uniform();
    if (draw >= total) continue;
    // First type whose cumulative mass exceeds the draw.
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), draw);
    slot = static_cast<int>(it - cumulative.begin());
    if (slot >= n) slot = n - 1;
  }
  return sequence;
}

}  // namespace osbm
