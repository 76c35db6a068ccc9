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
#include "longtail/dataset/cache.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "longtail/metrics/metrics.hpp"

namespace longtail {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t hash) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::uint64_t fnv1a_file(const std::string& path, std::uint64_t hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ratings file: " + path);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    hash = fnv1a(buf, static_cast<std::size_t>(in.gcount()), hash);
  }
  return hash;
}

void write_ratings_tsv(const std::string& path, const Interactions& inter) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char line[128];
  for (const Rating& r : inter.ratings()) {
    if (r.timestamp.has_value()) {
      std::snprintf(line, sizeof(line), "%" PRId64 "\t%" PRId64 "\t%.17g\t%" PRId64 "\n",
                    r.user, r.item, r.value, *r.timestamp);
    } else {
      std::snprintf(line, sizeof(line), "%" PRId64 "\t%" PRId64 "\t%.17g\n", r.user,
                    r.item, r.value);
    }
    out << line;
  }
  if (!out) throw IoError("short write to " + path);
}

}  // namespace

std::string prepare_fingerprint(const PrepareParams& params) {
  std::uint64_t hash = 14695981039346656037ULL;
  hash = fnv1a_file(params.source_path, hash);
  std::ostringstream meta;
  meta << to_string(params.format) << '|' << params.scale.min << '|' << params.scale.max
       << '|' << params.min_user_ratings << '|' << params.min_item_ratings << '|'
       << params.head_mass << '|' << params.test_fraction << '|' << params.split_seed;
  const std::string s = meta.str();
  hash = fnv1a(s.data(), s.size(), hash);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return buf;
}

PreparedDataset prepare_dataset(const PrepareParams& params) {
  PreparedDataset prepared;
  prepared.params = params;
  prepared.fingerprint = prepare_fingerprint(params);

  ParseResult parsed = parse_ratings(params.source_path, params.format, params.scale);
  prepared.raw_lines = parsed.lines;
  prepared.skipped_lines = parsed.skipped;
  prepared.parsed_ratings = parsed.ratings.size();

  Interactions filtered = filter_interactions(std::move(parsed.ratings),
                                              params.min_user_ratings,
                                              params.min_item_ratings);
  prepared.filtered_users = static_cast<std::size_t>(filtered.users().size());
  prepared.filtered_items = static_cast<std::size_t>(filtered.items().size());
  prepared.filtered_ratings = filtered.num_ratings();

  prepared.categories = split_categories(filtered, params.head_mass);
  prepared.split = split_train_test(filtered, params.test_fraction, params.split_seed);
  return prepared;
}

void write_cache(const PreparedDataset& prepared, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_ratings_tsv(dir + "/train.tsv", prepared.split.train);
  write_ratings_tsv(dir + "/test.tsv", prepared.split.test);

  std::vector<ItemId> short_head(prepared.categories.short_head.begin(),
                                 prepared.categories.short_head.end());
  std::sort(short_head.begin(), short_head.end());

  nlohmann::json manifest{
      {"fingerprint", prepared.fingerprint},
      {"dataset",
       {{"label", prepared.params.label},
        {"source_path", prepared.params.source_path},
        {"format", to_string(prepared.params.format)},
        {"scale", {{"min", prepared.params.scale.min}, {"max", prepared.params.scale.max}}}}},
      {"filter",
       {{"min_user_ratings", prepared.params.min_user_ratings},
        {"min_item_ratings", prepared.params.min_item_ratings},
        {"order", "users-then-items, one pass each"}}},
      {"counts",
       {{"raw_lines", prepared.raw_lines},
        {"skipped_lines", prepared.skipped_lines},
        {"parsed_ratings", prepared.parsed_ratings},
        {"users", prepared.filtered_users},
        {"items", prepared.filtered_items},
        {"ratings", prepared.filtered_ratings},
        {"ratings_removed_by_filter", prepared.parsed_ratings - prepared.filtered_ratings},
        {"filter_reduction_fraction",
         prepared.parsed_ratings > 0
             ? static_cast<double>(prepared.parsed_ratings - prepared.filtered_ratings) /
                   static_cast<double>(prepared.parsed_ratings)
             : 0.0}}},
      {"categories",
       {{"head_mass", prepared.params.head_mass},
        {"threshold", prepared.categories.threshold},
        {"short_head_count", prepared.categories.short_head.size()},
        {"long_tail_count", prepared.categories.long_tail.size()},
        {"tail_mass_fraction", prepared.categories.tail_mass_fraction()},
        {"short_head", short_head}}},
      {"split",
       {{"test_fraction", prepared.params.test_fraction},
        {"seed", prepared.split.seed},
        {"train_ratings", prepared.split.train.num_ratings()},
        {"test_ratings", prepared.split.test.num_ratings()},
        {"train_users", prepared.split.train.users().size()},
        {"test_users", prepared.split.test.users().size()}}},
  };

  std::ofstream out(dir + "/manifest.json");
  if (!out) throw IoError("cannot write " + dir + "/manifest.json");
  out << manifest.dump(2) << "\n";
}

bool cache_matches(const std::string& dir, const std::string& fingerprint) {
  std::ifstream in(dir + "/manifest.json");
  if (!in) return false;
  nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
  if (manifest.is_discarded()) return false;
  return manifest.value("fingerprint", std::string{}) == fingerprint &&
         std::filesystem::exists(dir + "/train.tsv") &&
         std::filesystem::exists(dir + "/test.tsv");
}

PreparedDataset load_cache(const std::string& dir) {
  std::ifstream in(dir + "/manifest.json");
  if (!in) {
    throw IoError("prepared cache not found at " + dir +
                  " (run `longtail prepare --config <config>` first)");
  }
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("corrupt cache manifest in " + dir + ": " + e.what());
  }

  PreparedDataset prepared;
  prepared.fingerprint = manifest.value("fingerprint", std::string{});
  const auto& ds = manifest.at("dataset");
  prepared.params.label = ds.value("label", std::string{});
  prepared.params.source_path = ds.value("source_path", std::string{});
  prepared.params.format = ratings_format_from_string(ds.value("format", "movielens"));
  prepared.params.scale.min = ds.at("scale").value("min", 1.0);
  prepared.params.scale.max = ds.at("scale").value("max", 5.0);
  const auto& filter = manifest.at("filter");
  prepared.params.min_user_ratings = filter.value("min_user_ratings", 20);
  prepared.params.min_item_ratings = filter.value("min_item_ratings", 20);
  const auto& counts = manifest.at("counts");
  prepared.raw_lines = counts.value("raw_lines", std::size_t{0});
  prepared.skipped_lines = counts.value("skipped_lines", std::size_t{0});
  prepared.parsed_ratings = counts.value("parsed_ratings", std::size_t{0});
  prepared.filtered_users = counts.value("users", std::size_t{0});
  prepared.filtered_items = counts.value("items", std::size_t{0});
  prepared.filtered_ratings = counts.value("ratings", std::size_t{0});
  const auto& cat = manifest.at("categories");
  prepared.params.head_mass = cat.value("head_mass", 0.8);
  const auto& split = manifest.at("split");
  prepared.params.test_fraction = split.value("test_fraction", 0.2);
  prepared.params.split_seed = split.value("seed", std::uint64_t{0});

  // TSV files reload through the tabular parser (4th column = timestamp is
  // ignored there, so re-parse keeps exactly user/item/value).
  ParseResult train = parse_ratings(dir + "/train.tsv", RatingsFormat::EpinionsTabular,
                                    prepared.params.scale);
  ParseResult test = parse_ratings(dir + "/test.tsv", RatingsFormat::EpinionsTabular,
                                   prepared.params.scale);
  if (train.skipped != 0 || test.skipped != 0) {
    throw IoError("corrupt cache: unparseable rows in " + dir);
  }
  prepared.split.train = Interactions::build(std::move(train.ratings));
  prepared.split.test = Interactions::build(std::move(test.ratings));
  prepared.split.seed = prepared.params.split_seed;

  CategorySplit& categories = prepared.categories;
  categories.head_mass = prepared.params.head_mass;
  categories.threshold = cat.value("threshold", 0);
  const auto short_head = cat.value("short_head", std::vector<ItemId>{});
  categories.short_head.insert(short_head.begin(), short_head.end());

  // The catalog is the union of train and test items; everything not in the
  // stored short head is long tail. Mass counts come from combined counts.
  categories.total_ratings = 0;
  categories.tail_ratings = 0;
  auto add_items = [&](const Interactions& inter) {
    for (int v = 0; v < inter.items().size(); ++v) {
      const ItemId id = inter.items().id_of(v);
      const auto pop = static_cast<std::int64_t>(inter.popularity(v));
      categories.total_ratings += pop;
      if (categories.short_head.count(id) == 0) {
        categories.long_tail.insert(id);
        categories.tail_ratings += pop;
      }
    }
  };
  add_items(prepared.split.train);
  add_items(prepared.split.test);
  return prepared;
}

std::string prepare_report(const PreparedDataset& prepared) {
  std::ostringstream out;
  out << "dataset " << prepared.params.label << " (" << to_string(prepared.params.format)
      << ") from " << prepared.params.source_path << "\n"
      << "  parsed lines      " << prepared.raw_lines << " (skipped " << prepared.skipped_lines
      << ")\n"
      << "  after filtering   " << prepared.filtered_users << " users, "
      << prepared.filtered_items << " items, " << prepared.filtered_ratings << " ratings\n"
      << "  category split    threshold " << prepared.categories.threshold << " ("
      << prepared.categories.short_head.size() << " head / "
      << prepared.categories.long_tail.size() << " tail items, tail mass "
      << prepared.categories.tail_mass_fraction() << ")\n"
      << "  tail quality      " << longtail_quality_count(prepared.categories,
                                                          prepared.split.train, 3.0)
      << " of " << prepared.categories.long_tail.size()
      << " tail items average above 3 in train\n"
      << "  train/test        " << prepared.split.train.num_ratings() << " / "
      << prepared.split.test.num_ratings() << " ratings, "
      << prepared.split.test.users().size() << " test users (seed "
      << prepared.split.seed << ")\n"
      << "  fingerprint       " << prepared.fingerprint << "\n";
  return out.str();
}

}  // namespace longtail
