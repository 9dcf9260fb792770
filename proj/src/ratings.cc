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

#include "osbm/ratings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "osbm/random.h"

namespace osbm {
namespace {

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

// Reads comma-separated rows; calls `row` with the fields and line number.
template <typename RowFn>
void ForEachRow(std::istream& in, std::string_view header_key,
                const char* source, RowFn row) {
  std::string line;
  int line_number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      const size_t comma = trimmed.find(',', start);
      fields.push_back(Trim(std::string_view(trimmed).substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first && fields[0] == header_key) {
      first = false;
      continue;
    }
    first = false;
    auto fail = [&](const std::string& message) {
      throw std::invalid_argument(std::string(source) + " line " +
                                  std::to_string(line_number) + ": " +
                                  message);
    };
    for (const std::string& field : fields) {
      if (field.empty()) fail("empty field");
    }
    row(fields, fail);
  }
}

double ParseReal(const std::string& text, const auto& fail) {
  double value = 0.0;
  const auto [end, error] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (error != std::errc() || end != text.data() + text.size() ||
      !std::isfinite(value)) {
    fail("malformed number '" + text + "'");
  }
  return value;
}

struct RatingRow {
  int user;
  int movie;
  double rating;
  bool observed;
};

}  // namespace

Problem IngestRatings(std::istream& ratings, std::istream& genres,
                      const RatingsParams& params) {
  if (params.num_users < 1 || params.num_movies < 1) {
    throw std::invalid_argument("user and movie counts must be positive");
  }
  std::map<std::string, int> user_index, movie_index;
  std::vector<std::string> user_names, movie_names;
  auto intern = [](std::map<std::string, int>& index,
                   std::vector<std::string>& names, const std::string& id) {
    const auto [it, inserted] = index.emplace(id, static_cast<int>(names.size()));
    if (inserted) names.push_back(id);
    return it->second;
  };
  std::vector<RatingRow> rows;
  std::set<std::pair<int, int>> seen;
  ForEachRow(ratings, "user", "ratings", [&](const auto& fields, const auto& fail) {
    if (fields.size() != 3 && fields.size() != 4) {
      fail("expected user,movie,rating[,observed]");
    }
    RatingRow row;
    row.user = intern(user_index, user_names, fields[0]);
    row.movie = intern(movie_index, movie_names, fields[1]);
    row.rating = ParseReal(fields[2], fail);
    row.observed = true;
    if (fields.size() == 4) {
      if (fields[3] != "0" && fields[3] != "1") fail("observed flag must be 0 or 1");
      row.observed = fields[3] == "1";
    }
    if (!seen.emplace(row.user, row.movie).second) {
      fail("duplicate rating for user '" + fields[0] + "' and movie '" +
           fields[1] + "'");
    }
    rows.push_back(row);
  });

  std::map<std::string, int> genre_index;
  std::vector<std::set<std::string>> movie_genre_names(movie_names.size());
  ForEachRow(genres, "movie", "genres", [&](const auto& fields, const auto& fail) {
    if (fields.size() != 2) fail("expected movie,genre");
    genre_index.emplace(fields[1], 0);
    const auto it = movie_index.find(fields[0]);
    if (it != movie_index.end()) movie_genre_names[it->second].insert(fields[1]);
  });
  // Dense genre ids in sorted name order.
  int next_genre = 0;
  for (auto& [name, id] : genre_index) id = next_genre++;
  const int num_genres = next_genre;
  std::vector<std::vector<int>> movie_genres(movie_names.size());
  for (size_t m = 0; m < movie_names.size(); ++m) {
    for (const std::string& name : movie_genre_names[m]) {
      movie_genres[m].push_back(genre_index[name]);
    }
  }

  const int total_users = static_cast<int>(user_names.size());
  const int total_movies = static_cast<int>(movie_names.size());
  if (total_users < params.num_users) {
    throw std::invalid_argument("requested " + std::to_string(params.num_users) +
                                " users but the ratings list " +
                                std::to_string(total_users));
  }
  if (total_movies < params.num_movies) {
    throw std::invalid_argument("requested " + std::to_string(params.num_movies) +
                                " movies but the ratings list " +
                                std::to_string(total_movies));
  }

  // Users by observed count, descending; ties by id.
  std::vector<int> observed_count(total_users, 0);
  for (const RatingRow& row : rows) observed_count[row.user] += row.observed;
  std::vector<int> users;
  for (const auto& [name, index] : user_index) users.push_back(index);
  std::stable_sort(users.begin(), users.end(), [&](int a, int b) {
    return observed_count[a] > observed_count[b];
  });
  users.resize(params.num_users);

  // Movies: uniform sample over the id-sorted list.
  std::vector<int> sorted_movies;
  for (const auto& [name, index] : movie_index) sorted_movies.push_back(index);
  Rng rng(DeriveSeed(params.seed, 21));
  std::vector<int> movies;
  for (int i : rng.SampleWithoutReplacement(total_movies, params.num_movies)) {
    movies.push_back(sorted_movies[i]);
  }

  std::vector<int> online_of(total_users, -1);
  for (int v = 0; v < params.num_users; ++v) online_of[users[v]] = v;
  std::vector<int> offline_of(total_movies, -1);
  for (int u = 0; u < params.num_movies; ++u) offline_of[movies[u]] = u;

  // Genre weights: mean rating per (selected user, genre) over all rows.
  std::vector<std::vector<double>> sums(params.num_users,
                                        std::vector<double>(num_genres, 0.0));
  std::vector<std::vector<int>> counts(params.num_users,
                                       std::vector<int>(num_genres, 0));
  std::vector<std::vector<uint8_t>> rated(
      params.num_users, std::vector<uint8_t>(params.num_movies, 0));
  for (const RatingRow& row : rows) {
    const int v = online_of[row.user];
    if (v < 0) continue;
    for (int z : movie_genres[row.movie]) {
      sums[v][z] += row.rating;
      ++counts[v][z];
    }
    const int u = offline_of[row.movie];
    if (u >= 0 && row.observed) rated[v][u] = 1;
  }
  for (int v = 0; v < params.num_users; ++v) {
    for (int z = 0; z < num_genres; ++z) {
      sums[v][z] = counts[v][z] > 0 ? sums[v][z] / counts[v][z] : 0.0;
    }
  }

  std::vector<OfflineVertex> offline;
  for (int u = 0; u < params.num_movies; ++u) {
    offline.push_back({movie_names[movies[u]], 1});
  }
  std::vector<double> rates(params.num_users, 1.0);
  int horizon = params.num_users;
  if (!params.integral_rates) {
    double total = 0.0;
    for (double& r : rates) {
      r = 1.0 - rng.Uniform();
      total += r;
    }
    double max_probability = 0.0;
    for (double& r : rates) {
      r /= total;
      max_probability = std::max(max_probability, r);
    }
    horizon = params.horizon > 0
                  ? params.horizon
                  : std::max(1, static_cast<int>(std::floor(1.0 / max_probability)));
    for (double& r : rates) r = std::min(1.0, r * horizon);
  }
  std::vector<OnlineType> online;
  for (int v = 0; v < params.num_users; ++v) {
    online.push_back({user_names[users[v]], rates[v]});
  }
  std::vector<Edge> edges;
  std::vector<std::vector<int>> edge_features;
  std::vector<int> edge_user;
  for (int v = 0; v < params.num_users; ++v) {
    for (int u = 0; u < params.num_movies; ++u) {
      if (rated[v][u]) continue;
      edges.push_back({"e" + std::to_string(edges.size()), u, v});
      edge_features.push_back(movie_genres[movies[u]]);
      edge_user.push_back(v);
    }
  }
  Instance instance(std::move(offline), std::move(online), std::move(edges),
                    horizon);
  return {std::move(instance),
          Objective::PerUserCoverage(std::move(edge_features),
                                     std::move(edge_user), std::move(sums))};
}

Problem IngestRatingsFiles(const std::string& ratings_path,
                           const std::string& genres_path,
                           const RatingsParams& params) {
  std::ifstream ratings(ratings_path);
  if (!ratings) throw std::runtime_error("cannot open '" + ratings_path + "'");
  std::ifstream genres(genres_path);
  if (!genres) throw std::runtime_error("cannot open '" + genres_path + "'");
  return IngestRatings(ratings, genres, params);
}

}  // namespace osbm
