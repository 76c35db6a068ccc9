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
#include "longtail/dataset/types.hpp"

#include <algorithm>
#include <string>

namespace longtail {

IdIndex::IdIndex(std::vector<std::int64_t> sorted_unique_ids) : ids_(std::move(sorted_unique_ids)) {
  to_dense_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    to_dense_.emplace(ids_[i], static_cast<int>(i));
  }
}

int IdIndex::dense_of(std::int64_t raw) const {
  auto it = to_dense_.find(raw);
  if (it == to_dense_.end()) {
    throw LookupError("unknown id " + std::to_string(raw));
  }
  return it->second;
}

Interactions Interactions::build(std::vector<Rating> ratings) {
  Interactions out;

  std::vector<std::int64_t> user_ids;
  std::vector<std::int64_t> item_ids;
  user_ids.reserve(ratings.size());
  item_ids.reserve(ratings.size());
  for (const Rating& r : ratings) {
    user_ids.push_back(r.user);
    item_ids.push_back(r.item);
  }
  auto dedup_sort = [](std::vector<std::int64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup_sort(user_ids);
  dedup_sort(item_ids);
  out.users_ = IdIndex(std::move(user_ids));
  out.items_ = IdIndex(std::move(item_ids));

  std::sort(ratings.begin(), ratings.end(), [&](const Rating& a, const Rating& b) {
    if (a.user != b.user) return a.user < b.user;
    return a.item < b.item;
  });
  out.ratings_ = std::move(ratings);

  out.popularity_.assign(static_cast<std::size_t>(out.items_.size()), 0);
  out.user_offsets_.assign(static_cast<std::size_t>(out.users_.size()) + 1, 0);
  for (const Rating& r : out.ratings_) {
    ++out.popularity_[static_cast<std::size_t>(out.items_.dense_of(r.item))];
    ++out.user_offsets_[static_cast<std::size_t>(out.users_.dense_of(r.user)) + 1];
  }
  for (std::size_t u = 1; u < out.user_offsets_.size(); ++u) {
    out.user_offsets_[u] += out.user_offsets_[u - 1];
  }
  return out;
}

std::int64_t Interactions::popularity_of(ItemId item) const {
  return popularity_[static_cast<std::size_t>(items_.dense_of(item))];
}

std::span<const Rating> Interactions::profile(int user_dense) const {
  const auto begin = static_cast<std::size_t>(user_offsets_[static_cast<std::size_t>(user_dense)]);
  const auto end = static_cast<std::size_t>(user_offsets_[static_cast<std::size_t>(user_dense) + 1]);
  return {ratings_.data() + begin, end - begin};
}

std::span<const Rating> Interactions::profile_of(UserId user) const {
  return profile(users_.dense_of(user));
}

std::unordered_set<ItemId> Interactions::profile_items(UserId user) const {
  std::unordered_set<ItemId> items;
  for (const Rating& r : profile_of(user)) items.insert(r.item);
  return items;
}

Category CategorySplit::category_of(ItemId v) const {
  if (long_tail.count(v) != 0) return Category::LongTail;
  if (short_head.count(v) != 0) return Category::ShortHead;
  throw LookupError("item " + std::to_string(v) + " not in category split");
}

int EpochPlan::epoch_of(UserId u) const {
  auto it = assignment.find(u);
  if (it == assignment.end()) {
    throw LookupError("user " + std::to_string(u) + " not in epoch plan");
  }
  return it->second;
}

}  // namespace longtail
