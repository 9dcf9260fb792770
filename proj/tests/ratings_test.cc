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

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "osbm/instance.h"
#include "test_util.h"

namespace osbm {
namespace {

Problem Ingest(const std::string& ratings_text, const std::string& genres_text,
               const RatingsParams& params) {
  std::istringstream ratings(ratings_text), genres(genres_text);
  return IngestRatings(ratings, genres, params);
}

int OnlineIndex(const Instance& instance, const std::string& id) {
  for (int v = 0; v < instance.num_online(); ++v) {
    if (instance.online()[v].id == id) return v;
  }
  return -1;
}

TEST(IngestRatingsTest, GenreWeightIsMeanRating) {
  const std::string ratings = "a,m1,4\na,m2,2\nb,m1,5,0\n";
  const std::string genres = "m1,z\nm2,z\n";
  RatingsParams params;
  params.num_users = 2;
  params.num_movies = 2;
  params.integral_rates = true;
  const Problem problem = Ingest(ratings, genres, params);
  const int a = OnlineIndex(problem.instance, "a");
  const int b = OnlineIndex(problem.instance, "b");
  ASSERT_GE(a, 0);
  ASSERT_GE(b, 0);
  ASSERT_EQ(problem.objective.user_feature_weights()[a].size(), 1u);
  EXPECT_DOUBLE_EQ(problem.objective.user_feature_weights()[a][0], 3.0);
  EXPECT_DOUBLE_EQ(problem.objective.user_feature_weights()[b][0], 5.0);
  // a rated both movies; b's only rating is unobserved.
  EXPECT_EQ(problem.instance.online_edges(a).size(), 0u);
  EXPECT_EQ(problem.instance.online_edges(b).size(), 2u);
}

TEST(IngestRatingsTest, SelectionCountsAndEdgeRule) {
  const testing::RatingsFixture fixture = testing::MakeRatingsFixture(60, 40, 8, 5);
  RatingsParams params;
  params.num_users = 20;
  params.num_movies = 10;
  params.seed = 3;
  const Problem problem = Ingest(fixture.ratings, fixture.genres, params);
  EXPECT_EQ(problem.instance.num_online(), 20);
  EXPECT_EQ(problem.instance.num_offline(), 10);
  EXPECT_TRUE(Validate(problem.instance).empty());
  EXPECT_EQ(problem.objective.kind(), ObjectiveKind::kPerUserCoverage);

  std::set<std::pair<std::string, std::string>> observed;
  std::map<std::string, int> observed_count;
  std::istringstream in(fixture.ratings);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream split(line);
    std::string user, movie, rating, flag;
    std::getline(split, user, ',');
    std::getline(split, movie, ',');
    std::getline(split, rating, ',');
    std::getline(split, flag, ',');
    if (flag == "1") {
      observed.insert({user, movie});
      ++observed_count[user];
    }
  }
  const Instance& instance = problem.instance;
  for (int e = 0; e < instance.num_edges(); ++e) {
    EXPECT_FALSE(observed.contains({instance.online()[instance.edge(e).v].id,
                                    instance.offline()[instance.edge(e).u].id}));
  }
  // Every missing (user, movie) pair among the selection is an edge.
  int expected_edges = 0;
  for (int v = 0; v < instance.num_online(); ++v) {
    for (int u = 0; u < instance.num_offline(); ++u) {
      expected_edges += !observed.contains(
          {instance.online()[v].id, instance.offline()[u].id});
    }
  }
  EXPECT_EQ(instance.num_edges(), expected_edges);
  // Selected users are the most active ones.
  int min_selected = 1 << 30;
  std::set<std::string> selected;
  for (int v = 0; v < instance.num_online(); ++v) {
    selected.insert(instance.online()[v].id);
    min_selected = std::min(min_selected, observed_count[instance.online()[v].id]);
  }
  for (const auto& [user, count] : observed_count) {
    if (!selected.contains(user)) {
      EXPECT_LE(count, min_selected);
    }
  }
}

TEST(IngestRatingsTest, FractionalRatesRespectHorizon) {
  const testing::RatingsFixture fixture = testing::MakeRatingsFixture(40, 20, 6, 8);
  RatingsParams params;
  params.num_users = 30;
  params.num_movies = 15;
  const Problem problem = Ingest(fixture.ratings, fixture.genres, params);
  double sum = 0.0, max_rate = 0.0;
  for (int v = 0; v < problem.instance.num_online(); ++v) {
    sum += problem.instance.rate(v);
    max_rate = std::max(max_rate, problem.instance.rate(v));
  }
  EXPECT_LE(sum, problem.instance.horizon() * (1 + 1e-12));
  EXPECT_LE(max_rate, 1.0);
  EXPECT_NEAR(max_rate, 1.0, 1.0 / problem.instance.horizon() + 1e-9);
  EXPECT_FALSE(problem.instance.has_integral_rates());
}

TEST(IngestRatingsTest, IntegralVariant) {
  const testing::RatingsFixture fixture = testing::MakeRatingsFixture(40, 20, 6, 8);
  RatingsParams params;
  params.num_users = 30;
  params.num_movies = 15;
  params.integral_rates = true;
  const Problem problem = Ingest(fixture.ratings, fixture.genres, params);
  EXPECT_EQ(problem.instance.horizon(), 30);
  EXPECT_TRUE(problem.instance.has_integral_rates());
}

TEST(IngestRatingsTest, SameSeedSameSelection) {
  const testing::RatingsFixture fixture = testing::MakeRatingsFixture(40, 30, 6, 9);
  RatingsParams params;
  params.num_users = 10;
  params.num_movies = 10;
  params.seed = 4;
  const Problem a = Ingest(fixture.ratings, fixture.genres, params);
  const Problem b = Ingest(fixture.ratings, fixture.genres, params);
  for (int u = 0; u < 10; ++u) {
    EXPECT_EQ(a.instance.offline()[u].id, b.instance.offline()[u].id);
  }
  params.seed = 5;
  const Problem c = Ingest(fixture.ratings, fixture.genres, params);
  bool differs = false;
  for (int u = 0; u < 10; ++u) {
    differs |= a.instance.offline()[u].id != c.instance.offline()[u].id;
  }
  EXPECT_TRUE(differs);
}

TEST(IngestRatingsTest, RejectsMalformedInput) {
  RatingsParams params;
  params.num_users = 1;
  params.num_movies = 1;
  const std::string genres = "movie,genre\nm1,z\n";
  try {
    Ingest("user,movie,rating\na,m1,four\n", genres, params);
    FAIL() << "expected a parse error";
  } catch (const std::invalid_argument& error) {
    EXPECT_NE(std::string(error.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(Ingest("a,m1\n", genres, params), std::invalid_argument);
  EXPECT_THROW(Ingest("a,m1,4\na,m1,3\n", genres, params), std::invalid_argument);
  EXPECT_THROW(Ingest("a,m1,4,2\n", genres, params), std::invalid_argument);
  EXPECT_THROW(Ingest("a,m1,4\n", "m1\n", params), std::invalid_argument);
  params.num_users = 2;
  EXPECT_THROW(Ingest("a,m1,4\n", genres, params), std::invalid_argument);
  params.num_users = 1;
  params.num_movies = 2;
  EXPECT_THROW(Ingest("a,m1,4\n", genres, params), std::invalid_argument);
}

TEST(IngestRatingsTest, MissingFileThrows) {
  EXPECT_THROW(IngestRatingsFiles("/nonexistent/r.csv", "/nonexistent/g.csv", {}),
               std::runtime_error);
}

}  // namespace
}  // namespace osbm
