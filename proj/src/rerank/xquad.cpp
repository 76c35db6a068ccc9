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
#include "longtail/rerank/xquad.hpp"

#include <cmath>
#include <stdexcept>

namespace longtail {

const char* to_string(XquadVariant v) {
  switch (v) {
    case XquadVariant::Binary:
      return "binary";
    case XquadVariant::Smooth:
      return "smooth";
    case XquadVariant::TimeBinary:
      return "time_binary";
    case XquadVariant::TimeSmooth:
      return "time_smooth";
  }
  return "?";
}

UserCategoryPreference user_category_preference(const std::unordered_set<ItemId>& profile,
                                                const CategorySplit& split) {
  UserCategoryPreference pref;
  if (profile.empty()) {
    pref.p_long = split.tail_mass_fraction();
    pref.p_short = 1.0 - pref.p_long;
    return pref;
  }
  std::size_t tail = 0;
  for (ItemId v : profile) {
    if (split.is_long_tail(v)) ++tail;
  }
  pref.p_long = static_cast<double>(tail) / static_cast<double>(profile.size());
  pref.p_short = 1.0 - pref.p_long;
  return pref;
}

void HistoryLedger::record(const ScoredList& served, const CategorySplit& split) {
  for (const auto& [item, score] : served.entries) {
    (void)score;
    seen_items.insert(item);
    ++total_slots;
    if (split.is_long_tail(item)) {
      ++count_long;
    } else {
      ++count_short;
    }
  }
}

double coverage_term(XquadVariant variant, Category d, const CoverageCounts& context,
                     SmoothForm form) {
  const std::int64_t n_d = context.count(d);
  const std::int64_t total = context.total();
  if (total == 0) return 1.0;  // empty product

  switch (variant) {
    case XquadVariant::Binary:
    case XquadVariant::TimeBinary:
      return n_d == 0 ? 1.0 : 0.0;
    case XquadVariant::Smooth:
    case XquadVariant::TimeSmooth: {
      const auto t = static_cast<double>(total);
      if (form == SmoothForm::PerItemMass) {
        return std::pow(1.0 - 1.0 / t, static_cast<double>(n_d));
      }
      return std::pow(1.0 - static_cast<double>(n_d) / t, t);
    }
  }
  return 1.0;
}

double diversity_score(ItemId v, const UserCategoryPreference& pref,
                       const CategorySplit& split, XquadVariant variant,
                       const CoverageCounts& context, SmoothForm form) {
  // P(v|d) is an indicator, so only v's own category survives the sum.
  const Category d = split.category_of(v);
  return pref.of(d) * coverage_term(variant, d, context, form);
}

ScoredList rerank(const ScoredList& candidates, const UserCategoryPreference& pref,
                  const CategorySplit& split, const RerankConfig& config,
                  const HistoryLedger& ledger) {
  if (config.output_len < 1) throw std::invalid_argument("output_len must be at least 1");
  if (config.lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");

  const bool time_based = config.variant == XquadVariant::TimeBinary ||
                          config.variant == XquadVariant::TimeSmooth;
  const CoverageCounts ledger_counts = CoverageCounts::of(ledger);
  CoverageCounts list_counts;  // the list S under construction

  const std::size_t want = static_cast<std::size_t>(config.output_len);
  const std::size_t n = candidates.entries.size();

  ScoredList out;
  out.user = candidates.user;
  out.produced_by = to_string(config.variant);
  out.short_list = n < want;
  out.entries.reserve(std::min(want, n));

  std::vector<bool> taken(n, false);
  std::vector<Category> category(n);
  for (std::size_t i = 0; i < n; ++i) {
    category[i] = split.category_of(candidates.entries[i].first);
  }

  while (out.entries.size() < want) {
    const CoverageCounts& context = time_based ? ledger_counts : list_counts;
    // The coverage term only depends on the candidate's category.
    const double bonus_long =
        config.lambda * pref.p_long *
        coverage_term(config.variant, Category::LongTail, context, config.smooth_form);
    const double bonus_short =
        config.lambda * pref.p_short *
        coverage_term(config.variant, Category::ShortHead, context, config.smooth_form);

    std::size_t best = n;
    double best_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double base = candidates.entries[i].second;
      const double s =
          base + (category[i] == Category::LongTail ? bonus_long : bonus_short);
      if (best == n || s > best_s) {
        best = i;
        best_s = s;
        continue;
      }
      if (s == best_s) {
        // ties: higher base score, then lower item id
        const double best_base = candidates.entries[best].second;
        if (base > best_base ||
            (base == best_base &&
             candidates.entries[i].first < candidates.entries[best].first)) {
          best = i;
          best_s = s;
        }
      }
    }
    if (best == n) break;  // candidates exhausted

    taken[best] = true;
    out.entries.emplace_back(candidates.entries[best].first, best_s);
    if (category[best] == Category::LongTail) {
      ++list_counts.long_count;
    } else {
      ++list_counts.short_count;
    }
  }
  return out;
}

ScoredList normalize_scores(const ScoredList& candidates) {
  ScoredList out = candidates;
  if (out.entries.empty()) return out;
  double lo = out.entries.front().second;
  double hi = lo;
  for (const auto& [item, s] : out.entries) {
    (void)item;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const double span = hi - lo;
  for (auto& [item, s] : out.entries) {
    (void)item;
    s = span > 0.0 ? (s - lo) / span : 1.0;
  }
  return out;
}

const std::vector<AlgorithmEntry>& algorithm_registry() {
  static const std::vector<AlgorithmEntry> registry{
      {"base", std::nullopt, true},
      {"binary", XquadVariant::Binary, true},
      {"smooth", XquadVariant::Smooth, true},
      {"time_binary", XquadVariant::TimeBinary, true},
      {"time_smooth", XquadVariant::TimeSmooth, true},
      {"reg", std::nullopt, false},  // reserved extension slot
  };
  return registry;
}

std::string registry_listing() {
  std::string out;
  for (const AlgorithmEntry& e : algorithm_registry()) {
    if (!out.empty()) out += ", ";
    out += e.label;
    if (!e.implemented) out += " (out of scope)";
  }
  return out;
}

std::optional<XquadVariant> resolve_algorithm(const std::string& label) {
  for (const AlgorithmEntry& e : algorithm_registry()) {
    if (e.label != label) continue;
    if (!e.implemented) {
      throw LookupError("algorithm '" + label +
                        "' is a reserved extension slot and out of scope; available: " +
                        registry_listing());
    }
    return e.variant;
  }
  throw LookupError("unknown algorithm '" + label + "'; available: " + registry_listing());
}

}  // namespace longtail
