/*
 * Copyright 2026 The longtail authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "longtail/dataset/types.hpp"

namespace longtail::testsupport {

// Seeded ratings world shaped like the public movie datasets: Zipf item
// exposure, genre-clustered tastes (so niche items keep coherent rater
// groups), exposure coupled to taste (people watch their genres), and
// popular items rated a little higher on average. Used as the stand-in
// dataset when the real rating files are not on disk.
struct SyntheticSpec {
  int n_users = 6000;
  int n_items = 3500;
  double zipf_exponent = 1.2;
  int min_profile = 25;
  int max_profile = 600;
  double median_profile = 100.0;
  double profile_spread = 0.55;  // sigma of the log-normal profile size
  // per-user exposure temperature: popularity weights are raised to
  // t in [1-spread, 1+spread]; low-t users dig deeper into the tail
  double temperature_spread = 0.65;
  int n_genres = 8;
  int taste_dim = 16;
  double genre_jitter = 0.35;        // item/user deviation from the archetype
  double taste_scale = 0.5;          // rating points per unit of taste match
  double exposure_taste_pull = 1.5;  // how strongly taste steers what gets rated
  double rating_center = 3.5;
  double popularity_quality_boost = 0.25;
  double noise = 0.9;
  std::uint64_t seed = 7;
};

std::vector<Rating> generate_ratings(const SyntheticSpec& spec);

/// Writes the ratings in MovieLens format (user::item::rating::timestamp).
void write_movielens_file(const std::string& path, const std::vector<Rating>& ratings);

}  // namespace longtail::testsupport
