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
#include "longtail/dataset/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

namespace longtail {

RatingsFormat ratings_format_from_string(const std::string& s) {
  if (s == "movielens" || s == "movielens1m" || s == "ml1m") return RatingsFormat::MovieLens1M;
  if (s == "epinions" || s == "tabular") return RatingsFormat::EpinionsTabular;
  throw ConfigError("unknown ratings format '" + s + "' (expected movielens|epinions)");
}

const char* to_string(RatingsFormat f) {
  return f == RatingsFormat::MovieLens1M ? "movielens" : "epinions";
}

namespace {

bool parse_i64(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_f64(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Splits on the literal "::" separator.
bool split_movielens(std::string_view line, std::string_view out[4], std::size_t& count) {
  count = 0;
  std::size_t start = 0;
  while (count < 4) {
    const std::size_t pos = line.find("::", start);
    if (pos == std::string_view::npos) {
      out[count++] = line.substr(start);
      return true;
    }
    out[count++] = line.substr(start, pos - start);
    start = pos + 2;
  }
  return false;  // more than 4 fields
}

// Whitespace- or comma-separated fields; extra fields beyond the third are ignored.
std::size_t split_tabular(std::string_view line, std::string_view out[3]) {
  std::size_t count = 0;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ','; };
  while (i < line.size() && count < 3) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    out[count++] = line.substr(start, i - start);
  }
  return count;
}

}  // namespace

ParseResult parse_ratings(const std::string& path, RatingsFormat format, RatingScale scale) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ratings file: " + path);
  return parse_ratings(in, format, scale);
}

ParseResult parse_ratings(std::istream& in, RatingsFormat format, RatingScale scale) {
  ParseResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    if (sv.empty()) continue;
    ++result.lines;

    Rating r;
    bool ok = false;
    if (format == RatingsFormat::MovieLens1M) {
      std::string_view f[4];
      std::size_t n = 0;
      if (split_movielens(sv, f, n) && (n == 3 || n == 4)) {
        std::int64_t ts = 0;
        ok = parse_i64(f[0], r.user) && parse_i64(f[1], r.item) && parse_f64(f[2], r.value);
        if (ok && n == 4) {
          ok = parse_i64(f[3], ts);
          if (ok) r.timestamp = ts;
        }
      }
    } else {
      std::string_view f[3];
      if (split_tabular(sv, f) == 3) {
        ok = parse_i64(f[0], r.user) && parse_i64(f[1], r.item) && parse_f64(f[2], r.value);
      }
    }
    if (ok && (r.value < scale.min || r.value > scale.max)) ok = false;

    if (ok) {
      result.ratings.push_back(r);
    } else {
      ++result.skipped;
    }
  }
  return result;
}

}  // namespace longtail
