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
#include "longtail/recommender/model.hpp"

#include <algorithm>

#include "longtail/kernels/kernels.hpp"

namespace longtail {

double score(const FactorModel& model, UserId user, ItemId item) {
  const int u = model.users.dense_of(user);
  const int v = model.items.dense_of(item);
  return kernels::dot(model.user_row(u).data(), model.item_row(v).data(),
                      static_cast<std::size_t>(model.k));
}

bool ScoredList::contains(ItemId v) const {
  return std::any_of(entries.begin(), entries.end(),
                     [v](const auto& e) { return e.first == v; });
}

void FactorScorer::score_catalog(UserId user, std::span<double> out) const {
  const int u = model_->users.dense_of(user);
  kernels::matvec_rows(model_->item_factors.data(),
                       static_cast<std::size_t>(model_->items.size()),
                       static_cast<std::size_t>(model_->k), model_->user_row(u).data(),
                       out.data());
}

PopularityScorer::PopularityScorer(const Interactions& train) {
  items_ = train.items().ids();
  scores_.reserve(items_.size());
  for (int v = 0; v < train.items().size(); ++v) {
    scores_.push_back(static_cast<double>(train.popularity(v)));
  }
}

void PopularityScorer::score_catalog(UserId, std::span<double> out) const {
  std::copy(scores_.begin(), scores_.end(), out.begin());
}

ScoredList top_n(const ItemScorer& scorer, UserId user, int n,
                 const std::unordered_set<ItemId>& exclude) {
  if (n < 1) throw std::invalid_argument("top_n: n must be at least 1");
  if (!scorer.knows_user(user)) {
    throw LookupError("unknown user " + std::to_string(user));
  }

  const int v = scorer.catalog_size();
  std::vector<double> scores(static_cast<std::size_t>(v));
  scorer.score_catalog(user, scores);

  std::vector<int> candidates;
  candidates.reserve(static_cast<std::size_t>(v));
  for (int d = 0; d < v; ++d) {
    if (exclude.count(scorer.item_at(d)) == 0) candidates.push_back(d);
  }

  auto better = [&](int a, int b) {
    if (scores[static_cast<std::size_t>(a)] != scores[static_cast<std::size_t>(b)])
      return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
    return scorer.item_at(a) < scorer.item_at(b);
  };

  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), better);
  candidates.resize(keep);

  ScoredList list;
  list.user = user;
  list.produced_by = scorer.name();
  list.short_list = keep < static_cast<std::size_t>(n);
  list.entries.reserve(keep);
  for (int d : candidates) {
    list.entries.emplace_back(scorer.item_at(d), scores[static_cast<std::size_t>(d)]);
  }
  return list;
}

}  // namespace longtail
