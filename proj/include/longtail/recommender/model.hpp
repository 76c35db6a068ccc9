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
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "longtail/dataset/types.hpp"

namespace longtail {

/// Latent factor matrices of the trained ranker, self-contained: the id maps
/// travel with the factors so a reloaded checkpoint reproduces top_n exactly.
struct FactorModel {
  int k = 0;
  int trained_sweeps = 0;
  std::vector<double> user_factors;  // U x k, row-major
  std::vector<double> item_factors;  // V x k, row-major
  IdIndex users;
  IdIndex items;
  double regularization = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> objective_log;  // regularized objective after each sweep

  std::span<const double> user_row(int u) const {
    return {user_factors.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(k),
            static_cast<std::size_t>(k)};
  }
  std::span<const double> item_row(int v) const {
    return {item_factors.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(k),
            static_cast<std::size_t>(k)};
  }
};

/// Inner product of the user and item factor rows. Throws LookupError for
/// ids the model does not know.
double score(const FactorModel& model, UserId user, ItemId item);

/// An ordered candidate list for one user. Base-recommender output has
/// non-increasing scores; re-ranked lists carry the greedy objective value at
/// selection time instead, which is allowed to fluctuate.
struct ScoredList {
  UserId user = 0;
  std::vector<std::pair<ItemId, double>> entries;
  std::string produced_by;
  bool short_list = false;  // fewer scoreable items than requested

  std::size_t size() const { return entries.size(); }
  bool contains(ItemId v) const;
};

/// Anything that can score the whole catalog for a user.
class ItemScorer {
 public:
  virtual ~ItemScorer() = default;
  virtual int catalog_size() const = 0;
  virtual ItemId item_at(int dense) const = 0;
  virtual bool knows_user(UserId user) const = 0;
  /// Fills out[0..catalog_size) with scores for this user.
  virtual void score_catalog(UserId user, std::span<double> out) const = 0;
  virtual std::string name() const = 0;
};

class FactorScorer final : public ItemScorer {
 public:
  explicit FactorScorer(const FactorModel& model) : model_(&model) {}
  int catalog_size() const override { return model_->items.size(); }
  ItemId item_at(int dense) const override { return model_->items.id_of(dense); }
  bool knows_user(UserId user) const override { return model_->users.contains(user); }
  void score_catalog(UserId user, std::span<double> out) const override;
  std::string name() const override { return "rank_als"; }

 private:
  const FactorModel* model_;
};

/// Deterministic test double: every user sees items scored by their train
/// popularity. Decouples re-ranker behaviour from factorization noise.
class PopularityScorer final : public ItemScorer {
 public:
  explicit PopularityScorer(const Interactions& train);
  int catalog_size() const override { return static_cast<int>(items_.size()); }
  ItemId item_at(int dense) const override { return items_[static_cast<std::size_t>(dense)]; }
  bool knows_user(UserId) const override { return true; }
  void score_catalog(UserId user, std::span<double> out) const override;
  std::string name() const override { return "popularity"; }

 private:
  std::vector<ItemId> items_;
  std::vector<double> scores_;
};

/// The n highest-scoring items not in `exclude`, ties broken by item id
/// ascending. Fewer than n scoreable items => all of them, flagged short.
ScoredList top_n(const ItemScorer& scorer, UserId user, int n,
                 const std::unordered_set<ItemId>& exclude);

}  // namespace longtail
