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
#include "longtail/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace longtail {

PopularityMap popularity_by_id(const Interactions& inter) {
  PopularityMap map;
  map.reserve(static_cast<std::size_t>(inter.items().size()));
  for (int v = 0; v < inter.items().size(); ++v) {
    map.emplace(inter.items().id_of(v), inter.popularity(v));
  }
  return map;
}

ArpResult arp(const std::vector<ScoredList>& lists, const PopularityMap& popularity) {
  if (lists.empty()) throw std::invalid_argument("arp: no lists");
  ArpResult result;
  double sum_of_means = 0.0;
  int counted = 0;
  for (const ScoredList& list : lists) {
    if (list.entries.empty()) {
      ++result.skipped_lists;
      continue;
    }
    double sum = 0.0;
    for (const auto& [item, score] : list.entries) {
      (void)score;
      auto it = popularity.find(item);
      if (it == popularity.end()) {
        throw LookupError("arp: no popularity count for item " + std::to_string(item));
      }
      sum += static_cast<double>(it->second);
    }
    sum_of_means += sum / static_cast<double>(list.entries.size());
    ++counted;
  }
  if (counted == 0) throw std::invalid_argument("arp: all lists empty");
  result.value = sum_of_means / static_cast<double>(counted);
  return result;
}

namespace {

std::size_t covered_tail(const std::vector<ScoredList>& lists, const CategorySplit& split,
                         std::unordered_set<ItemId>& seen_tail) {
  for (const ScoredList& list : lists) {
    for (const auto& [item, score] : list.entries) {
      (void)score;
      if (split.is_long_tail(item)) seen_tail.insert(item);
    }
  }
  return seen_tail.size();
}

}  // namespace

double lcr(const std::vector<ScoredList>& lists, const CategorySplit& split) {
  if (split.long_tail.empty()) {
    throw MetricUndefinedError("lcr undefined: the long tail is empty");
  }
  std::unordered_set<ItemId> seen_tail;
  covered_tail(lists, split, seen_tail);
  return static_cast<double>(seen_tail.size()) / static_cast<double>(split.long_tail.size());
}

double clcr(const std::vector<std::vector<ScoredList>>& per_epoch_lists,
            const CategorySplit& split) {
  if (split.long_tail.empty()) {
    throw MetricUndefinedError("clcr undefined: the long tail is empty");
  }
  if (per_epoch_lists.empty()) throw std::invalid_argument("clcr: no epochs");
  std::unordered_set<ItemId> seen_tail;
  for (const auto& epoch : per_epoch_lists) covered_tail(epoch, split, seen_tail);
  return static_cast<double>(seen_tail.size()) / static_cast<double>(split.long_tail.size());
}

double clcr_summed(const std::vector<std::vector<ScoredList>>& per_epoch_lists,
                   const CategorySplit& split) {
  if (per_epoch_lists.empty()) throw std::invalid_argument("clcr: no epochs");
  double sum = 0.0;
  for (const auto& epoch : per_epoch_lists) sum += lcr(epoch, split);
  return sum;
}

std::optional<double> ndcg_at_k(const ScoredList& list,
                                const std::unordered_set<ItemId>& relevant, int k) {
  if (k < 1) throw std::invalid_argument("ndcg_at_k: k must be at least 1");
  if (relevant.empty()) return std::nullopt;

  const auto depth = std::min<std::size_t>(static_cast<std::size_t>(k), list.entries.size());
  double dcg = 0.0;
  for (std::size_t pos = 0; pos < depth; ++pos) {
    if (relevant.count(list.entries[pos].first) != 0) {
      dcg += 1.0 / std::log2(static_cast<double>(pos) + 2.0);
    }
  }
  const auto ideal = std::min<std::size_t>(static_cast<std::size_t>(k), relevant.size());
  double idcg = 0.0;
  for (std::size_t pos = 0; pos < ideal; ++pos) {
    idcg += 1.0 / std::log2(static_cast<double>(pos) + 2.0);
  }
  return dcg / idcg;
}

int longtail_quality_count(const CategorySplit& split, const Interactions& train,
                           double min_avg) {
  std::unordered_map<ItemId, std::pair<double, std::int64_t>> sums;
  for (const Rating& r : train.ratings()) {
    if (!split.is_long_tail(r.item)) continue;
    auto& [sum, n] = sums[r.item];
    sum += r.value;
    ++n;
  }
  int count = 0;
  for (const auto& [item, acc] : sums) {
    (void)item;
    if (acc.first / static_cast<double>(acc.second) > min_avg) ++count;
  }
  return count;
}

namespace {

// Lanczos log-gamma.
double log_gamma(double x) {
  static const double coef[6] = {76.18009172947146,  -86.50532032941677,
                                 24.01409824083091,  -1.231739572450155,
                                 0.1208650973866179e-2, -0.5395239384953e-5};
  double y = x;
  double tmp = x + 5.5;
  tmp -= (x + 0.5) * std::log(tmp);
  double ser = 1.000000000190015;
  for (double c : coef) ser += c / ++y;
  return -tmp + std::log(2.5066282746310005 * ser / x);
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                             a * std::log(x) + b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_cf(a, b, x) / a;
  }
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_two_sided_p(double t, int df) {
  if (df < 1) throw std::invalid_argument("t-test needs at least 1 degree of freedom");
  const double v = static_cast<double>(df);
  return beta_inc(v / 2.0, 0.5, v / (v + t * t));
}

TTestResult paired_significance(const std::map<UserId, double>& per_user_a,
                                const std::map<UserId, double>& per_user_b) {
  if (per_user_a.size() != per_user_b.size()) {
    throw std::invalid_argument("paired_significance: user sets differ in size");
  }
  std::vector<double> diffs;
  diffs.reserve(per_user_a.size());
  auto ib = per_user_b.begin();
  for (auto ia = per_user_a.begin(); ia != per_user_a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      throw std::invalid_argument("paired_significance: mismatched user sets");
    }
    diffs.push_back(ia->second - ib->second);
  }
  const auto n = static_cast<double>(diffs.size());
  if (diffs.size() < 2) {
    throw std::invalid_argument("paired_significance: need at least 2 paired users");
  }

  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= n;
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  var /= (n - 1.0);

  TTestResult result;
  result.df = static_cast<int>(diffs.size()) - 1;
  if (var == 0.0) {
    // degenerate: identical vectors are indistinguishable, a constant shift
    // is infinitely significant
    result.p_value = mean == 0.0 ? 1.0 : 0.0;
    result.t_stat = mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    result.significant = mean != 0.0;
    return result;
  }
  result.t_stat = mean / std::sqrt(var / n);
  result.p_value = student_t_two_sided_p(result.t_stat, result.df);
  result.significant = result.p_value <= 0.05;
  return result;
}

}  // namespace longtail
