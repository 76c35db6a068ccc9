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
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "longtail/util/errors.hpp"

namespace longtail {

using UserId = std::int64_t;
using ItemId = std::int64_t;

struct Rating {
  UserId user = 0;
  ItemId item = 0;
  double value = 0.0;
  std::optional<std::int64_t> timestamp;  // parsed, carried, never consumed
};

/// Bijection raw id <-> dense index. Dense indices run 0..n-1 in ascending
/// raw-id order, so they are stable for a given id set.
class IdIndex {
 public:
  IdIndex() = default;
  explicit IdIndex(std::vector<std::int64_t> sorted_unique_ids);

  int size() const { return static_cast<int>(ids_.size()); }
  std::int64_t id_of(int dense) const { return ids_[static_cast<std::size_t>(dense)]; }
  int dense_of(std::int64_t raw) const;
  bool contains(std::int64_t raw) const { return to_dense_.count(raw) != 0; }
  const std::vector<std::int64_t>& ids() const { return ids_; }

 private:
  std::vector<std::int64_t> ids_;
  std::unordered_map<std::int64_t, int> to_dense_;
};

/// The filtered rating matrix: unique (user, item) pairs, dense index maps,
/// and the per-item rating counts every popularity computation keys off.
class Interactions {
 public:
  Interactions() = default;

  /// Builds dense indices, CSR layout and popularity counts. `ratings` must
  /// already be unique per (user, item); value order does not matter.
  static Interactions build(std::vector<Rating> ratings);

  const std::vector<Rating>& ratings() const { return ratings_; }
  std::size_t num_ratings() const { return ratings_.size(); }
  const IdIndex& users() const { return users_; }
  const IdIndex& items() const { return items_; }

  /// Rating count of an item (dense index).
  int popularity(int item_dense) const { return popularity_[static_cast<std::size_t>(item_dense)]; }
  const std::vector<int>& popularity() const { return popularity_; }
  std::int64_t popularity_of(ItemId item) const;

  /// Ratings of one user, sorted by item id.
  std::span<const Rating> profile(int user_dense) const;
  std::span<const Rating> profile_of(UserId user) const;
  std::unordered_set<ItemId> profile_items(UserId user) const;

 private:
  std::vector<Rating> ratings_;  // sorted by (user dense, item dense)
  IdIndex users_;
  IdIndex items_;
  std::vector<int> popularity_;
  std::vector<std::int64_t> user_offsets_;  // size U+1, CSR over ratings_
};

enum class Category { LongTail, ShortHead };

/// Partition of the catalog into short head (popularity > threshold) and
/// long tail (popularity <= threshold).
struct CategorySplit {
  std::unordered_set<ItemId> long_tail;
  std::unordered_set<ItemId> short_head;
  int threshold = 0;
  double head_mass = 0.8;
  std::int64_t total_ratings = 0;
  std::int64_t tail_ratings = 0;

  Category category_of(ItemId v) const;
  bool is_long_tail(ItemId v) const { return long_tail.count(v) != 0; }
  bool contains(ItemId v) const { return long_tail.count(v) != 0 || short_head.count(v) != 0; }
  /// Fraction of rating mass held by the long tail; the empty-profile
  /// fallback for user category preferences.
  double tail_mass_fraction() const {
    return total_ratings > 0 ? static_cast<double>(tail_ratings) / static_cast<double>(total_ratings) : 0.0;
  }
};

struct SplitData {
  Interactions train;
  Interactions test;
  std::uint64_t seed = 0;
};

/// Assignment of test users to epochs T_0..T_{N-1}, sizes differing by at
/// most one.
struct EpochPlan {
  int n_epochs = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<UserId>> epochs;          // epoch -> users, assignment order
  std::unordered_map<UserId, int> assignment;       // user -> epoch

  int epoch_of(UserId u) const;
};

}  // namespace longtail
