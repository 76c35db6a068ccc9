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

#include "longtail/dataset/parse.hpp"
#include "longtail/dataset/prepare.hpp"
#include "longtail/dataset/types.hpp"

namespace longtail {

struct PrepareParams {
  std::string label;
  std::string source_path;
  RatingsFormat format = RatingsFormat::MovieLens1M;
  RatingScale scale;
  int min_user_ratings = 20;
  int min_item_ratings = 20;
  double head_mass = 0.8;
  double test_fraction = 0.2;
  std::uint64_t split_seed = 0;
};

struct PreparedDataset {
  PrepareParams params;
  SplitData split;          // train + test
  CategorySplit categories; // over the full filtered dataset
  std::string fingerprint;
  // counts for the manifest / report
  std::size_t raw_lines = 0;
  std::size_t skipped_lines = 0;
  std::size_t parsed_ratings = 0;
  std::size_t filtered_users = 0;
  std::size_t filtered_items = 0;
  std::size_t filtered_ratings = 0;
};

/// Content+parameter hash identifying a preparation run (cache key).
std::string prepare_fingerprint(const PrepareParams& params);

/// parse -> filter -> categories -> per-user train/test split.
PreparedDataset prepare_dataset(const PrepareParams& params);

/// Writes <dir>/train.tsv, <dir>/test.tsv (user item rating [timestamp],
/// tab-separated) and <dir>/manifest.json.
void write_cache(const PreparedDataset& prepared, const std::string& dir);

/// True when <dir>/manifest.json exists and carries this fingerprint.
bool cache_matches(const std::string& dir, const std::string& fingerprint);

/// Rebuilds the prepared dataset from a cache directory (exact: ratings from
/// the tsv files, categories from the manifest).
PreparedDataset load_cache(const std::string& dir);

/// One-paragraph counts report for the CLI.
std::string prepare_report(const PreparedDataset& prepared);

}  // namespace longtail
