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

#ifndef OSBM_INSTANCE_H_
#define OSBM_INSTANCE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace osbm {

struct OfflineVertex {
  std::string id;
  int capacity = 1;
};

// An online vertex type. `rate` is the expected number of arrivals over the
// horizon; the per-slot arrival probability is rate / horizon.
struct OnlineType {
  std::string id;
  double rate = 0.0;
};

// Endpoints are dense indices into the offline / online vertex lists. An index
// outside those lists is representable so that Validate can report it.
struct Edge {
  std::string id;
  int u = -1;
  int v = -1;
};

// Bipartite instance under known-i.i.d. arrivals. Immutable once built.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<OfflineVertex> offline, std::vector<OnlineType> online,
           std::vector<Edge> edges, int horizon, int eta = 1);

  int num_offline() const { return static_cast<int>(offline_.size()); }
  int num_online() const { return static_cast<int>(online_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int horizon() const { return horizon_; }
  int eta() const { return eta_; }

  const std::vector<OfflineVertex>& offline() const { return offline_; }
  const std::vector<OnlineType>& online() const { return online_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int capacity(int u) const { return offline_[u].capacity; }
  double rate(int v) const { return online_[v].rate; }
  double arrival_probability(int v) const {
    return online_[v].rate / static_cast<double>(horizon_);
  }

  // Incident edge indices, ascending. Edges with dangling endpoints are left
  // out of both lists.
  std::span<const int> offline_edges(int u) const { return offline_adj_[u]; }
  std::span<const int> online_edges(int v) const { return online_adj_[v]; }

  // True when every type has rate exactly 1 and |V| = T.
  bool has_integral_rates() const;

  // Copies with every offline capacity set to `b`, or with a new per-arrival
  // match budget.
  Instance WithUniformCapacity(int b) const;
  Instance WithEta(int eta) const;

 private:
  std::vector<OfflineVertex> offline_;
  std::vector<OnlineType> online_;
  std::vector<Edge> edges_;
  int horizon_ = 1;
  int eta_ = 1;
  std::vector<std::vector<int>> offline_adj_;
  std::vector<std::vector<int>> online_adj_;
};

// Returns every invariant violation; an empty list means the instance is valid.
std::vector<std::string> Validate(const Instance& instance);

inline constexpr int kNoArrival = -1;

// One entry per time slot: an online type index or kNoArrival.
struct ArrivalSequence {
  std::vector<int> slots;
};

// Each slot independently draws type v with probability rate_v / T and no
// arrival with the remaining probability.
ArrivalSequence SampleArrivals(const Instance& instance, uint64_t seed);

}  // namespace osbm

#endif  // OSBM_INSTANCE_H_
