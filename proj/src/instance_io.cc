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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "osbm/problem.h"
#include "osbm/random.h"

namespace osbm {
namespace {

constexpr std::string_view kInstanceHeader = "osbm-instance 1";
constexpr std::string_view kSolutionHeader = "osbm-solution 1";

void CheckToken(const std::string& id) {
  if (id.empty() ||
      std::any_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
      })) {
    throw std::invalid_argument("id '" + id +
                                "' is empty or contains whitespace");
  }
}

// Splits lines into whitespace-separated fields and reports parse errors with
// the line number.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool Next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      fields_.clear();
      std::istringstream stream(line);
      std::string field;
      while (stream >> field) fields_.push_back(field);
      if (!fields_.empty() && fields_[0][0] != '#') return true;
    }
    return false;
  }

  const std::string& keyword() const { return fields_[0]; }
  size_t size() const { return fields_.size(); }
  const std::string& field(size_t i) const { return fields_[i]; }

  void Expect(size_t count) const {
    if (fields_.size() != count) {
      Fail("expected " + std::to_string(count - 1) + " values after '" +
           keyword() + "'");
    }
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw std::invalid_argument("line " + std::to_string(line_number_) + ": " +
                                message);
  }

  double Real(size_t i) const {
    const std::string& text = fields_[i];
    double value = 0.0;
    const auto [end, error] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (error != std::errc() || end != text.data() + text.size() ||
        !std::isfinite(value)) {
      Fail("malformed number '" + text + "'");
    }
    return value;
  }

  int64_t Integer(size_t i) const {
    const std::string& text = fields_[i];
    int64_t value = 0;
    const auto [end, error] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (error != std::errc() || end != text.data() + text.size()) {
      Fail("malformed integer '" + text + "'");
    }
    return value;
  }

  int Int(size_t i) const {
    const int64_t value = Integer(i);
    if (value < INT32_MIN || value > INT32_MAX) Fail("integer out of range");
    return static_cast<int>(value);
  }

 private:
  std::istream& in_;
  int line_number_ = 0;
  std::vector<std::string> fields_;
};

int Lookup(const std::unordered_map<std::string, int>& index,
           const std::string& id, const LineReader& reader,
           const char* what) {
  const auto it = index.find(id);
  if (it == index.end()) reader.Fail(std::string("unknown ") + what + " '" + id + "'");
  return it->second;
}

}  // namespace

std::string FormatReal(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<std::string> ValidateProblem(const Problem& problem) {
  std::vector<std::string> violations = Validate(problem.instance);
  const Objective& f = problem.objective;
  if (f.num_edges() != problem.instance.num_edges()) {
    violations.push_back("objective covers " + std::to_string(f.num_edges()) +
                         " edges but the instance has " +
                         std::to_string(problem.instance.num_edges()));
    return violations;
  }
  if (f.kind() == ObjectiveKind::kPerUserCoverage) {
    for (int e = 0; e < f.num_edges(); ++e) {
      if (f.edge_user()[e] != problem.instance.edge(e).v) {
        violations.push_back("per-user owner of edge '" +
                             problem.instance.edge(e).id +
                             "' is not its online endpoint");
      }
    }
  }
  return violations;
}

std::string_view SyntheticKindName(SyntheticKind kind) {
  return kind == SyntheticKind::kCoverage ? "coverage" : "budget-additive";
}

std::optional<SyntheticKind> ParseSyntheticKind(std::string_view name) {
  if (name == "coverage") return SyntheticKind::kCoverage;
  if (name == "budget-additive" || name == "budget_additive") {
    return SyntheticKind::kBudgetAdditive;
  }
  return std::nullopt;
}

Problem GenerateSynthetic(SyntheticKind kind, uint64_t seed) {
  const bool coverage = kind == SyntheticKind::kCoverage;
  const int num_offline = coverage ? 40 : 100;
  const int num_online = 200;
  const int horizon = coverage ? 1000 : 200;
  constexpr int kMaxNeighbors = 10;
  constexpr int kNumFeatures = 1000;
  constexpr int kMaxFeatures = 10;
  constexpr double kBudget = 50.0;

  Rng rng(DeriveSeed(seed, coverage ? 11 : 12));
  std::vector<OfflineVertex> offline(num_offline);
  for (int u = 0; u < num_offline; ++u) offline[u] = {"u" + std::to_string(u), 1};
  std::vector<OnlineType> online(num_online);
  for (int v = 0; v < num_online; ++v) {
    online[v] = {"v" + std::to_string(v), 1.0 - rng.Uniform()};
  }
  std::vector<Edge> edges;
  for (int v = 0; v < num_online; ++v) {
    const int degree = rng.UniformInt(1, std::min(kMaxNeighbors, num_offline));
    for (int u : rng.SampleWithoutReplacement(num_offline, degree)) {
      edges.push_back({"e" + std::to_string(edges.size()), u, v});
    }
  }
  Instance instance(std::move(offline), std::move(online), edges, horizon);

  if (!coverage) {
    std::vector<double> weights(edges.size());
    for (double& w : weights) w = rng.Uniform();
    return {std::move(instance), Objective::BudgetAdditive(weights, kBudget)};
  }
  auto random_features = [&] {
    return rng.SampleWithoutReplacement(kNumFeatures,
                                        rng.UniformInt(1, kMaxFeatures));
  };
  std::vector<std::vector<int>> offline_features(num_offline);
  std::vector<std::vector<int>> online_features(num_online);
  for (auto& features : offline_features) features = random_features();
  for (auto& features : online_features) features = random_features();
  std::vector<double> feature_weights(kNumFeatures);
  for (double& w : feature_weights) w = rng.Uniform();
  std::vector<std::vector<int>> edge_features(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    const auto& a = offline_features[edges[e].u];
    const auto& b = online_features[edges[e].v];
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(edge_features[e]));
  }
  return {std::move(instance),
          Objective::Coverage(std::move(edge_features),
                              std::move(feature_weights))};
}

void WriteProblem(const Problem& problem, std::ostream& out) {
  const Instance& instance = problem.instance;
  const Objective& f = problem.objective;
  if (f.num_edges() != instance.num_edges()) {
    throw std::invalid_argument("objective and instance differ in edge count");
  }
  out << kInstanceHeader << '\n';
  out << "horizon " << instance.horizon() << '\n';
  out << "eta " << instance.eta() << '\n';
  for (const OfflineVertex& vertex : instance.offline()) {
    CheckToken(vertex.id);
    out << "u " << vertex.id << ' ' << vertex.capacity << '\n';
  }
  for (const OnlineType& type : instance.online()) {
    CheckToken(type.id);
    out << "v " << type.id << ' ' << FormatReal(type.rate) << '\n';
  }
  for (const Edge& edge : instance.edges()) {
    CheckToken(edge.id);
    out << "e " << edge.id << ' ' << instance.offline().at(edge.u).id << ' '
        << instance.online().at(edge.v).id << '\n';
  }
  out << "objective " << ObjectiveKindName(f.kind()) << '\n';
  switch (f.kind()) {
    case ObjectiveKind::kBudgetAdditive:
      out << "budget " << FormatReal(f.budget()) << '\n';
      [[fallthrough]];
    case ObjectiveKind::kLinear:
      for (int e = 0; e < f.num_edges(); ++e) {
        out << "w " << instance.edge(e).id << ' '
            << FormatReal(f.edge_weights()[e]) << '\n';
      }
      break;
    case ObjectiveKind::kCoverage:
    case ObjectiveKind::kPerUserCoverage:
      out << "features " << f.num_features() << '\n';
      if (f.kind() == ObjectiveKind::kCoverage) {
        for (int z = 0; z < f.num_features(); ++z) {
          out << "fw " << z << ' ' << FormatReal(f.feature_weights()[z])
              << '\n';
        }
      } else {
        for (int v = 0; v < instance.num_online(); ++v) {
          out << "uw " << instance.online()[v].id;
          for (double w : f.user_feature_weights()[v]) {
            out << ' ' << FormatReal(w);
          }
          out << '\n';
        }
      }
      for (int e = 0; e < f.num_edges(); ++e) {
        const auto& features = f.edge_features()[e];
        out << "q " << instance.edge(e).id << ' ' << features.size();
        for (int z : features) out << ' ' << z;
        out << '\n';
      }
      break;
  }
}

Problem ReadProblem(std::istream& in) {
  LineReader reader(in);
  if (!reader.Next() || reader.size() != 2 ||
      reader.keyword() + " " + reader.field(1) != kInstanceHeader) {
    throw std::invalid_argument("missing header '" +
                                std::string(kInstanceHeader) + "'");
  }
  int horizon = 0;
  int eta = 1;
  std::vector<OfflineVertex> offline;
  std::vector<OnlineType> online;
  std::vector<Edge> edges;
  std::unordered_map<std::string, int> offline_index, online_index, edge_index;
  std::optional<ObjectiveKind> kind;
  double budget = 0.0;
  int num_features = -1;
  std::vector<double> weights;
  std::vector<uint8_t> weight_seen;
  std::vector<double> feature_weights;
  std::vector<std::vector<int>> edge_features;
  std::vector<uint8_t> features_seen;
  std::vector<std::vector<double>> user_weights;

  auto start_objective_records = [&] {
    if (!kind) reader.Fail("'" + reader.keyword() + "' before 'objective'");
  };
  auto edge_of = [&](const std::string& id) {
    return Lookup(edge_index, id, reader, "edge");
  };
  auto require_features = [&] {
    if (num_features < 0) reader.Fail("'features' must precede '" + reader.keyword() + "'");
  };

  while (reader.Next()) {
    const std::string& key = reader.keyword();
    if (key == "horizon") {
      reader.Expect(2);
      horizon = reader.Int(1);
    } else if (key == "eta") {
      reader.Expect(2);
      eta = reader.Int(1);
    } else if (key == "u" || key == "v" || key == "e") {
      if (kind) reader.Fail("graph record after 'objective'");
      if (key == "e") {
        reader.Expect(4);
        const int u = Lookup(offline_index, reader.field(2), reader, "offline vertex");
        const int v = Lookup(online_index, reader.field(3), reader, "online type");
        if (!edge_index.emplace(reader.field(1), edges.size()).second) {
          reader.Fail("duplicate edge id '" + reader.field(1) + "'");
        }
        edges.push_back({reader.field(1), u, v});
      } else {
        reader.Expect(3);
        auto& index = key == "u" ? offline_index : online_index;
        const int next = static_cast<int>(key == "u" ? offline.size() : online.size());
        if (!index.emplace(reader.field(1), next).second) {
          reader.Fail("duplicate vertex id '" + reader.field(1) + "'");
        }
        if (key == "u") {
          offline.push_back({reader.field(1), reader.Int(2)});
        } else {
          online.push_back({reader.field(1), reader.Real(2)});
        }
      }
    } else if (key == "objective") {
      reader.Expect(2);
      if (kind) reader.Fail("second 'objective' record");
      kind = ParseObjectiveKind(reader.field(1));
      if (!kind) reader.Fail("unknown objective kind '" + reader.field(1) + "'");
      weights.assign(edges.size(), 0.0);
      weight_seen.assign(edges.size(), 0);
      edge_features.assign(edges.size(), {});
      features_seen.assign(edges.size(), 0);
    } else if (key == "budget") {
      start_objective_records();
      reader.Expect(2);
      budget = reader.Real(1);
    } else if (key == "features") {
      start_objective_records();
      reader.Expect(2);
      num_features = reader.Int(1);
      if (num_features < 0) reader.Fail("negative feature count");
      feature_weights.assign(num_features, 0.0);
      user_weights.assign(online.size(), std::vector<double>(num_features, 0.0));
    } else if (key == "w") {
      start_objective_records();
      reader.Expect(3);
      const int e = edge_of(reader.field(1));
      weights[e] = reader.Real(2);
      weight_seen[e] = 1;
    } else if (key == "fw") {
      start_objective_records();
      require_features();
      reader.Expect(3);
      const int z = reader.Int(1);
      if (z < 0 || z >= num_features) reader.Fail("feature index out of range");
      feature_weights[z] = reader.Real(2);
    } else if (key == "q") {
      start_objective_records();
      require_features();
      if (reader.size() < 3) reader.Fail("'q' needs an edge id and a count");
      const int e = edge_of(reader.field(1));
      const int count = reader.Int(2);
      if (count < 0 || reader.size() != static_cast<size_t>(3 + count)) {
        reader.Fail("feature count does not match the listed features");
      }
      edge_features[e].clear();
      for (int i = 0; i < count; ++i) {
        const int z = reader.Int(3 + i);
        if (z < 0 || z >= num_features) reader.Fail("feature index out of range");
        edge_features[e].push_back(z);
      }
      features_seen[e] = 1;
    } else if (key == "uw") {
      start_objective_records();
      require_features();
      reader.Expect(2 + num_features);
      const int v = Lookup(online_index, reader.field(1), reader, "online type");
      for (int z = 0; z < num_features; ++z) user_weights[v][z] = reader.Real(2 + z);
    } else {
      reader.Fail("unknown record '" + key + "'");
    }
  }
  if (!kind) throw std::invalid_argument("missing 'objective' record");
  const int m = static_cast<int>(edges.size());
  auto require_all = [&](const std::vector<uint8_t>& seen, const char* what) {
    for (int e = 0; e < m; ++e) {
      if (!seen[e]) {
        throw std::invalid_argument(std::string("missing '") + what +
                                    "' record for edge '" + edges[e].id + "'");
      }
    }
  };
  Objective objective;
  std::vector<int> edge_user;
  switch (*kind) {
    case ObjectiveKind::kLinear:
      require_all(weight_seen, "w");
      objective = Objective::Linear(weights);
      break;
    case ObjectiveKind::kBudgetAdditive:
      require_all(weight_seen, "w");
      objective = Objective::BudgetAdditive(weights, budget);
      break;
    case ObjectiveKind::kCoverage:
      if (num_features < 0) throw std::invalid_argument("missing 'features' record");
      require_all(features_seen, "q");
      objective = Objective::Coverage(edge_features, feature_weights);
      break;
    case ObjectiveKind::kPerUserCoverage:
      if (num_features < 0) throw std::invalid_argument("missing 'features' record");
      require_all(features_seen, "q");
      for (const Edge& edge : edges) edge_user.push_back(edge.v);
      objective = Objective::PerUserCoverage(edge_features, edge_user, user_weights);
      break;
  }
  return {Instance(std::move(offline), std::move(online), std::move(edges),
                   horizon, eta),
          std::move(objective)};
}

void SaveProblem(const Problem& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  WriteProblem(problem, out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Problem LoadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return ReadProblem(in);
  } catch (const std::invalid_argument& error) {
    throw std::invalid_argument(path + ": " + error.what());
  }
}

void WriteSolution(const Instance& instance, const SolutionArtifact& solution,
                   std::ostream& out) {
  if (static_cast<int>(solution.x.size()) != instance.num_edges()) {
    throw std::invalid_argument("solution length differs from m");
  }
  out << kSolutionHeader << '\n';
  out << "solver " << solution.solver << '\n';
  out << "value " << FormatReal(solution.value.value) << ' '
      << FormatReal(solution.value.std_error) << '\n';
  out << "steps " << solution.steps << '\n';
  out << "grad_samples " << solution.grad_samples << '\n';
  out << "seed " << solution.seed << '\n';
  for (int e = 0; e < instance.num_edges(); ++e) {
    out << "x " << instance.edge(e).id << ' ' << FormatReal(solution.x[e])
        << '\n';
  }
}

SolutionArtifact ReadSolution(const Instance& instance, std::istream& in) {
  LineReader reader(in);
  if (!reader.Next() || reader.size() != 2 ||
      reader.keyword() + " " + reader.field(1) != kSolutionHeader) {
    throw std::invalid_argument("missing header '" +
                                std::string(kSolutionHeader) + "'");
  }
  std::unordered_map<std::string, int> edge_index;
  for (int e = 0; e < instance.num_edges(); ++e) edge_index[instance.edge(e).id] = e;
  SolutionArtifact solution;
  solution.x.assign(instance.num_edges(), 0.0);
  std::vector<uint8_t> seen(instance.num_edges(), 0);
  while (reader.Next()) {
    const std::string& key = reader.keyword();
    if (key == "solver") {
      reader.Expect(2);
      solution.solver = reader.field(1);
    } else if (key == "value") {
      reader.Expect(3);
      solution.value = {reader.Real(1), reader.Real(2)};
    } else if (key == "steps") {
      reader.Expect(2);
      solution.steps = reader.Int(1);
    } else if (key == "grad_samples") {
      reader.Expect(2);
      solution.grad_samples = reader.Int(1);
    } else if (key == "seed") {
      reader.Expect(2);
      uint64_t seed = 0;
      const std::string& text = reader.field(1);
      const auto [end, error] =
          std::from_chars(text.data(), text.data() + text.size(), seed);
      if (error != std::errc() || end != text.data() + text.size()) {
        reader.Fail("malformed seed '" + text + "'");
      }
      solution.seed = seed;
    } else if (key == "x") {
      reader.Expect(3);
      const int e = Lookup(edge_index, reader.field(1), reader, "edge");
      const double value = reader.Real(2);
      if (value < 0.0 || value > 1.0) reader.Fail("x outside [0, 1]");
      solution.x[e] = value;
      seen[e] = 1;
    } else {
      reader.Fail("unknown record '" + key + "'");
    }
  }
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (!seen[e]) {
      throw std::invalid_argument("missing x for edge '" + instance.edge(e).id +
                                  "'");
    }
  }
  return solution;
}

void SaveSolution(const Instance& instance, const SolutionArtifact& solution,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  WriteSolution(instance, solution, out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

SolutionArtifact LoadSolution(const Instance& instance,
                              const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return ReadSolution(instance, in);
  } catch (const std::invalid_argument& error) {
    throw std::invalid_argument(path + ": " + error.what());
  }
}

}  // namespace osbm
