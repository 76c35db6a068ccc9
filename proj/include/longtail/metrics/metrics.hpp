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

#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "longtail/dataset/types.hpp"
#include "longtail/recommender/model.hpp"

namespace longtail {

using PopularityMap = std::unordered_map<ItemId, std::int64_t>;

PopularityMap popularity_by_id(const Interactions& inter);

struct ArpResult {
  double value = 0.0;
  int skipped_lists = 0;  // empty lists, excluded with a warning counter
};

/// Mean over lists of the mean train popularity of the list's items.
ArpResult arp(const std::vector<ScoredList>& lists, const PopularityMap& popularity);

/// |union of recommended items ∩ Γ| / |Γ|. Throws MetricUndefinedError when
/// the long tail is empty.
double lcr(const std::vector<ScoredList>& lists, const CategorySplit& split);

/// Union reading of the cumulative metric: coverage of everything
/// recommended in epochs 0..i.
double clcr(const std::vector<std::vector<ScoredList>>& per_epoch_lists,
            const CategorySplit& split);

/// Alternative cumulative reading: the running sum of per-epoch ratios.
/// Kept for comparison; the union form above is the one reported.
double clcr_summed(const std::vector<std::vector<ScoredList>>& per_epoch_lists,
                   const CategorySplit& split);

/// Binary-relevance NDCG with log2(position+1) discount, ideal DCG over
/// min(k, |relevant|). nullopt when the user has no relevant items (the
/// caller excludes such users from averages).
std::optional<double> ndcg_at_k(const ScoredList& list,
                                const std::unordered_set<ItemId>& relevant, int k);

/// Long-tail items whose mean train rating exceeds min_avg.
int longtail_quality_count(const CategorySplit& split, const Interactions& train,
                           double min_avg);

struct TTestResult {
  double p_value = 1.0;
  bool significant = false;  // p <= 0.05
  double t_stat = 0.0;
  int df = 0;
};

/// Two-sided paired t-test over per-user metric differences (a - b). Keys
/// must match exactly and hold at least two users. Conventions: all
/// differences zero => p = 1; zero variance with nonzero mean => p = 0.
TTestResult paired_significance(const std::map<UserId, double>& per_user_a,
                                const std::map<UserId, double>& per_user_b);

/// Two-sided survival function of Student's t: P(|T_df| >= |t|), via the
/// regularized incomplete beta function.
double student_t_two_sided_p(double t, int df);

}  // namespace longtail
