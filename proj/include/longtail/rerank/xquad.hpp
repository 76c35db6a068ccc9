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
#include <string>
#include <unordered_set>
#include <vector>

#include "longtail/dataset/types.hpp"
#include "longtail/recommender/model.hpp"

namespace longtail {

// Greedy category-coverage re-ranking. Each step scores every remaining
// candidate v as
//
//   s(v) = base(v) + lambda * P(d_v|u) * coverage(d_v, context)
//
// where d_v is v's popularity category and the coverage term is the product
// over the context of (1 - P(i|d, context)). The list-based variants judge
// coverage against the list under construction; the time-based variants
// judge it against the cross-epoch recommendation ledger, which is frozen
// while one user's list is built.

enum class XquadVariant { Binary, Smooth, TimeBinary, TimeSmooth };

/// Reading of P(i|d,C) for the Smooth variants. PerItemMass treats every
/// context slot as carrying 1/|C| of the mass, giving (1 - 1/|C|)^{n_d};
/// ConstantFraction uses the category share n_d/|C| per slot, giving
/// (1 - n_d/|C|)^{|C|}, which decays to zero almost immediately on a ledger.
enum class SmoothForm { PerItemMass, ConstantFraction };

const char* to_string(XquadVariant v);

struct UserCategoryPreference {
  double p_long = 0.0;
  double p_short = 0.0;

  double of(Category d) const { return d == Category::LongTail ? p_long : p_short; }
};

/// Fraction of the user's train profile in each category. An empty profile
/// falls back to the catalog's category rating-mass split.
UserCategoryPreference user_category_preference(const std::unordered_set<ItemId>& profile,
                                                const CategorySplit& split);

/// The cross-epoch record of everything recommended so far. Counters count
/// slots (multiplicity); seen_items keeps the distinct items for coverage
/// metrics.
struct HistoryLedger {
  std::unordered_set<ItemId> seen_items;
  std::int64_t total_slots = 0;
  std::int64_t count_long = 0;
  std::int64_t count_short = 0;

  void record(const ScoredList& served, const CategorySplit& split);
  std::int64_t count(Category d) const {
    return d == Category::LongTail ? count_long : count_short;
  }
};

/// Category slot counts of whatever context a coverage term is judged
/// against: the list under construction or the ledger.
struct CoverageCounts {
  std::int64_t long_count = 0;
  std::int64_t short_count = 0;

  std::int64_t total() const { return long_count + short_count; }
  std::int64_t count(Category d) const {
    return d == Category::LongTail ? long_count : short_count;
  }
  static CoverageCounts of(const HistoryLedger& ledger) {
    return {ledger.count_long, ledger.count_short};
  }
};

/// Closed form of prod_{i in context} (1 - P(i|d,context)); always in [0,1],
/// 1 for an empty context.
double coverage_term(XquadVariant variant, Category d, const CoverageCounts& context,
                     SmoothForm form = SmoothForm::PerItemMass);

/// P(d_v|u) * coverage(d_v, context): the Eq.-collapsed two-category sum,
/// since P(v|d) is an indicator.
double diversity_score(ItemId v, const UserCategoryPreference& pref,
                       const CategorySplit& split, XquadVariant variant,
                       const CoverageCounts& context,
                       SmoothForm form = SmoothForm::PerItemMass);

struct RerankConfig {
  double lambda = 0.0;
  XquadVariant variant = XquadVariant::Binary;
  int output_len = 10;
  SmoothForm smooth_form = SmoothForm::PerItemMass;
};

/// Min-max rescaling of the base scores to [0,1] over the candidate list
/// (all-equal scores map to 1). Off by default everywhere: the lambda values
/// are calibrated against raw score magnitudes.
ScoredList normalize_scores(const ScoredList& candidates);

/// Greedy selection of output_len items from the candidate list. Ties on the
/// greedy score break to the higher base score, then the lower item id.
/// Emitted scores are the greedy s values at selection time. The ledger is
/// read, never written.
ScoredList rerank(const ScoredList& candidates, const UserCategoryPreference& pref,
                  const CategorySplit& split, const RerankConfig& config,
                  const HistoryLedger& ledger);

// --- algorithm registry -----------------------------------------------------

struct AlgorithmEntry {
  std::string label;
  std::optional<XquadVariant> variant;  // nullopt = base list, no re-ranking
  bool implemented = true;
};

/// Registry order: base, binary, smooth, time_binary, time_smooth, reg.
const std::vector<AlgorithmEntry>& algorithm_registry();

/// Maps a label to its variant (nullopt for "base"). Unknown labels throw a
/// LookupError listing the registry; "reg" throws its out-of-scope message.
std::optional<XquadVariant> resolve_algorithm(const std::string& label);

std::string registry_listing();

}  // namespace longtail
