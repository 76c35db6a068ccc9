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

#include <iosfwd>
#include <string>
#include <vector>

#include "longtail/dataset/types.hpp"

namespace longtail {

enum class RatingsFormat {
  MovieLens1M,      // UserID::MovieID::Rating::Timestamp
  EpinionsTabular,  // user item rating [extra...], whitespace or comma separated
};

RatingsFormat ratings_format_from_string(const std::string& s);
const char* to_string(RatingsFormat f);

struct RatingScale {
  double min = 1.0;
  double max = 5.0;
};

struct ParseResult {
  std::vector<Rating> ratings;
  std::size_t lines = 0;    // non-empty input lines seen
  std::size_t skipped = 0;  // malformed or out-of-scale lines
};

/// One Rating per valid line. Malformed lines (wrong field count, non-numeric
/// fields, rating outside the scale) are counted in `skipped`, never silently
/// dropped. Throws IoError if the file cannot be opened.
ParseResult parse_ratings(const std::string& path, RatingsFormat format,
                          RatingScale scale = {});
ParseResult parse_ratings(std::istream& in, RatingsFormat format, RatingScale scale = {});

}  // namespace longtail
