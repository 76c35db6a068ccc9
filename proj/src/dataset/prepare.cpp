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
#include "longtail/dataset/prepare.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "longtail/util/rng.hpp"

namespace longtail {

Interactions filter_interactions(std::vector<Rating> ratings, int min_user, int min_item) {
  if (min_user < 0 || min_item < 0) {
    throw std::invalid_argument("filter thresholds must be non-negative");
  }

  // Duplicate (user, item) pairs: keep the last occurrence in input order.
  std::vector<std::size_t> order(ratings.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rating& ra = ratings[a];
    const Rating& rb = ratings[b];
    if (ra.user != rb.user) return ra.user < rb.user;
    if (ra.item != rb.item) return ra.item < rb.item;
    return a < b;
  });
  std::vector<Rating> unique;
  unique.reserve(ratings.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const bool last_of_pair =
        i + 1 == order.size() || ratings[order[i]].user != ratings[order[i + 1]].user ||
        ratings[order[i]].item != ratings[order[i + 1]].item;
    if (last_of_pair) unique.push_back(ratings[order[i]]);
  }

  // Pass 1: users.
  std::unordered_map<UserId, int> user_counts;
  for (const Rating& r : unique) ++user_counts[r.user];
  std::vector<Rating> kept;
  kept.reserve(unique.size());
  for (const Rating& r : unique) {
    if (user_counts[r.user] >= min_user) kept.push_back(r);
  }

  // Pass 2: items, counted over what survived pass 1.
  std::unordered_map<ItemId, int> item_counts;
  for (const Rating& r : kept) ++item_counts[r.item];
  std::vector<Rating> final_ratings;
  final_ratings.reserve(kept.size());
  for (const Rating& r : kept) {
    if (item_counts[r.item] >= min_item) final_ratings.push_back(r);
  }

  if (final_ratings.empty()) {
    throw EmptyDatasetError("no interactions left after filtering (min_user=" +
                            std::to_string(min_user) + ", min_item=" +
                            std::to_string(min_item) + ")");
  }
  return Interactions::build(std::move(final_ratings));
}

CategorySplit split_categories(const Interactions& inter, double head_mass) {
  if (!(head_mass > 0.0 && head_mass < 1.0)) {
    throw std::invalid_argument("head_mass must lie strictly between 0 and 1");
  }

  const int v = inter.items().size();
  std::vector<int> order(static_cast<std::size_t>(v));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inter.popularity(a) != inter.popularity(b))
      return inter.popularity(a) > inter.popularity(b);
    return inter.items().id_of(a) < inter.items().id_of(b);
  });

  const auto total = static_cast<std::int64_t>(inter.num_ratings());
  const double target = head_mass * static_cast<double>(total);

  std::int64_t cum = 0;
  std::size_t prefix_len = 0;
  while (prefix_len < order.size() && static_cast<double>(cum) < target) {
    cum += inter.popularity(order[prefix_len]);
    ++prefix_len;
  }

  // threshold separates the minimal prefix from the rest; items tied with it
  // fall to the long tail ("more than threshold" is strict).
  int threshold;
  if (prefix_len == order.size()) {
    threshold = inter.popularity(order.back()) - 1;
  } else {
    threshold = inter.popularity(order[prefix_len]);
  }

  CategorySplit split;
  split.threshold = threshold;
  split.head_mass = head_mass;
  split.total_ratings = total;
  for (int dense = 0; dense < v; ++dense) {
    const ItemId id = inter.items().id_of(dense);
    if (inter.popularity(dense) > threshold) {
      split.short_head.insert(id);
    } else {
      split.long_tail.insert(id);
      split.tail_ratings += inter.popularity(dense);
    }
  }
  return split;
}

SplitData split_train_test(const Interactions& inter, double test_fraction,
                           std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie strictly between 0 and 1");
  }

  std::vector<Rating> train;
  std::vector<Rating> test;
  train.reserve(inter.num_ratings());

  for (int u = 0; u < inter.users().size(); ++u) {
    const auto prof = inter.profile(u);
    const auto n = prof.size();
    auto n_test = static_cast<std::size_t>(
        std::ceil(test_fraction * static_cast<double>(n)));
    if (n_test >= n) n_test = 0;  // train share would be empty: keep everything

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(inter.users().id_of(u))));
    rng.shuffle(idx);

    for (std::size_t i = 0; i < n; ++i) {
      (i < n_test ? test : train).push_back(prof[idx[i]]);
    }
  }

  SplitData out;
  out.train = Interactions::build(std::move(train));
  out.test = Interactions::build(std::move(test));
  out.seed = seed;
  return out;
}

EpochPlan assign_epochs(std::vector<UserId> test_users, int n_epochs, std::uint64_t seed) {
  if (n_epochs < 1) throw std::invalid_argument("n_epochs must be at least 1");
  if (test_users.empty()) throw std::invalid_argument("no test users to assign");
  if (static_cast<std::size_t>(n_epochs) > test_users.size()) {
    throw std::invalid_argument("n_epochs (" + std::to_string(n_epochs) +
                                ") exceeds test user count (" +
                                std::to_string(test_users.size()) + "); some epoch would be empty");
  }

  std::sort(test_users.begin(), test_users.end());
  test_users.erase(std::unique(test_users.begin(), test_users.end()), test_users.end());

  Rng rng(seed);
  rng.shuffle(test_users);

  EpochPlan plan;
  plan.n_epochs = n_epochs;
  plan.seed = seed;
  plan.epochs.resize(static_cast<std::size_t>(n_epochs));

  const std::size_t n = test_users.size();
  const std::size_t base = n / static_cast<std::size_t>(n_epochs);
  const std::size_t extra = n % static_cast<std::size_t>(n_epochs);
  std::size_t pos = 0;
  for (std::size_t e = 0; e < static_cast<std::size_t>(n_epochs); ++e) {
    const std::size_t size = base + (e < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i, ++pos) {
      plan.epochs[e].push_back(test_users[pos]);
      plan.assignment.emplace(test_users[pos], static_cast<int>(e));
    }
  }
  return plan;
}

}  // namespace longtail
