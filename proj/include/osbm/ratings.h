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

#ifndef OSBM_RATINGS_H_
#define OSBM_RATINGS_H_

#include <cstdint>
#include <istream>
#include <string>

#include "osbm/problem.h"

namespace osbm {

struct RatingsParams {
  int num_users = 200;
  int num_movies = 100;
  uint64_t seed = 0;
  // Every user gets rate 1 and T = |V|.
  bool integral_rates = false;
  // Horizon for random rates; 0 picks the largest T with every rate <= 1.
  int horizon = 0;
};

// Builds a recommendation instance from a completed ratings matrix.
//
// Ratings rows are `user,movie,rating[,observed]`; `observed` is 1 for a
// rating the user actually gave and 0 for a predicted entry (default 1).
// Genre rows are `movie,genre`. Ids are opaque strings; blank lines, lines
// starting with '#', and a leading `user,...` or `movie,...` header are
// skipped.
//
// The users with the most observed ratings (ties by id) become the online
// types and a uniform sample of the rated movies becomes the offline side.
// Movie m and user v are joined when v has no observed rating for m. The
// objective is per-user weighted coverage of genres: the weight of genre z
// for v is v's mean rating over all rows whose movie carries z, and an edge
// covers its movie's genres. Random rates are drawn uniformly from (0, 1] and
// normalized so the arrival probabilities sum to 1.
//
// Throws std::invalid_argument on malformed rows or when fewer users or
// movies exist than requested.
Problem IngestRatings(std::istream& ratings, std::istream& genres,
                      const RatingsParams& params);

// File wrapper; throws std::runtime_error naming a path that cannot be read.
Problem IngestRatingsFiles(const std::string& ratings_path,
                           const std::string& genres_path,
                           const RatingsParams& params);

}  // namespace osbm

#endif  // OSBM_RATINGS_H_
