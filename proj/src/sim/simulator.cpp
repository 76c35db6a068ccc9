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
#include "longtail/sim/simulator.hpp"

#include <algorithm>
#include <stdexcept>

#include "longtail/metrics/metrics.hpp"
#include "longtail/util/rng.hpp"

namespace longtail {

CandidateCache::CandidateCache(const ItemScorer& scorer, const Interactions& train,
                               int candidate_len)
    : scorer_(&scorer), train_(&train), candidate_len_(candidate_len) {
  if (candidate_len < 1) throw std::invalid_argument("candidate_len must be at least 1");
}

const ScoredList& CandidateCache::get(UserId user) {
  auto it = cache_.find(user);
  if (it != cache_.end()) return it->second;
  ScoredList list = top_n(*scorer_, user, candidate_len_, train_->profile_items(user));
  return cache_.emplace(user, std::move(list)).first->second;
}

namespace {

ScoredList base_prefix(const ScoredList& candidates, int output_len) {
  ScoredList out;
  out.user = candidates.user;
  out.produced_by = "base";
  const auto want = static_cast<std::size_t>(output_len);
  const auto take = std::min(want, candidates.entries.size());
  out.entries.assign(candidates.entries.begin(),
                     candidates.entries.begin() + static_cast<std::ptrdiff_t>(take));
  out.short_list = take < want;
  return out;
}

std::size_t distinct_tail_seen(const HistoryLedger& ledger, const CategorySplit& split) {
  std::size_t n = 0;
  for (ItemId v : ledger.seen_items) {
    if (split.is_long_tail(v)) ++n;
  }
  return n;
}

}  // namespace

RunTrace run(const RunConfig& config, const Prepared& prepared, CandidateCache& candidates,
             const RecSink& sink) {
  if (prepared.train == nullptr || prepared.test == nullptr || prepared.split == nullptr ||
      prepared.plan == nullptr) {
    throw std::invalid_argument("run: incomplete prepared bundle");
  }
  if (config.candidate_len < config.output_len) {
    throw std::invalid_argument("candidate_len must be at least output_len");
  }
  const std::optional<XquadVariant> variant = resolve_algorithm(config.algorithm);
  const EpochPlan& plan = *prepared.plan;
  const CategorySplit& split = *prepared.split;
  if (plan.n_epochs != config.n_epochs) {
    throw std::invalid_argument("epoch plan has " + std::to_string(plan.n_epochs) +
                                " epochs but config wants " + std::to_string(config.n_epochs));
  }

  const PopularityMap train_popularity = popularity_by_id(*prepared.train);
  if (split.long_tail.empty()) {
    throw MetricUndefinedError("cannot simulate: category split has an empty long tail");
  }

  RunTrace trace;
  trace.config = config;

  for (int e = 0; e < plan.n_epochs; ++e) {
    std::vector<UserId> users = plan.epochs[static_cast<std::size_t>(e)];
    std::sort(users.begin(), users.end());
    Rng serve_rng(derive_seed(config.seeds.serve, static_cast<std::uint64_t>(e)));
    serve_rng.shuffle(users);

    std::vector<ScoredList> served;
    served.reserve(users.size());

    double ndcg_sum = 0.0;
    int evaluated = 0;
    int skipped = 0;

    for (UserId user : users) {
      const ScoredList& cand = candidates.get(user);

      ScoredList out;
      if (!variant.has_value()) {
        out = base_prefix(cand, config.output_len);
      } else {
        RerankConfig rc;
        rc.lambda = config.lambda;
        rc.variant = *variant;
        rc.output_len = config.output_len;
        rc.smooth_form = config.smooth_form;
        const UserCategoryPreference pref =
            user_category_preference(prepared.train->profile_items(user), split);
        out = config.normalize_scores
                  ? rerank(normalize_scores(cand), pref, split, rc, trace.final_ledger)
                  : rerank(cand, pref, split, rc, trace.final_ledger);
      }

      bool evaluable = !out.entries.empty();
      if (evaluable) {
        double pop_sum = 0.0;
        for (const auto& [item, score] : out.entries) {
          (void)score;
          pop_sum += static_cast<double>(train_popularity.at(item));
        }
        trace.per_user_arp[user] =
            pop_sum / static_cast<double>(out.entries.size());
      }

      const auto relevant = prepared.test->users().contains(user)
                                ? prepared.test->profile_items(user)
                                : std::unordered_set<ItemId>{};
      const auto ndcg = out.entries.empty()
                            ? std::nullopt
                            : ndcg_at_k(out, relevant, config.output_len);
      if (ndcg.has_value()) {
        trace.per_user_ndcg[user] = *ndcg;
        ndcg_sum += *ndcg;
        ++evaluated;
      } else {
        ++skipped;  // empty candidates or empty test relevance
      }

      if (sink) {
        int rank = 1;
        for (const auto& [item, score] : out.entries) {
          sink(RecRow{e, user, rank++, item, score, split.category_of(item)});
        }
      }

      if (config.cadence == LedgerCadence::PerUser) {
        trace.final_ledger.record(out, split);
      }
      served.push_back(std::move(out));
    }

    if (config.cadence == LedgerCadence::PerEpoch) {
      for (const ScoredList& list : served) trace.final_ledger.record(list, split);
    }

    EpochResult result;
    result.epoch = e;
    result.arp = arp(served, train_popularity).value;
    result.lcr = lcr(served, split);
    result.clcr = static_cast<double>(distinct_tail_seen(trace.final_ledger, split)) /
                  static_cast<double>(split.long_tail.size());
    result.ndcg = evaluated > 0 ? ndcg_sum / static_cast<double>(evaluated) : 0.0;
    result.users_evaluated = evaluated;
    result.users_skipped = skipped;
    trace.epochs.push_back(result);
  }

  return trace;
}

std::vector<RunTrace> run_suite(
    const std::vector<RunConfig>& configs, const Prepared& prepared,
    const ItemScorer& scorer,
    const std::function<RecSink(const RunConfig&)>& sink_factory) {
  if (configs.empty()) return {};

  // paired comparison: every config must see the same candidates, epoch
  // composition and serve order
  const RunConfig& first = configs.front();
  for (const RunConfig& c : configs) {
    if (c.candidate_len != first.candidate_len) {
      throw std::invalid_argument("run_suite: configs disagree on candidate_len");
    }
    if (c.seeds.split != first.seeds.split || c.seeds.epoch != first.seeds.epoch ||
        c.seeds.serve != first.seeds.serve) {
      throw std::invalid_argument("run_suite: configs must share seeds for pairing");
    }
    if (c.n_epochs != first.n_epochs) {
      throw std::invalid_argument("run_suite: configs disagree on n_epochs");
    }
  }
  const int candidate_len = first.candidate_len;

  CandidateCache cache(scorer, *prepared.train, candidate_len);
  std::vector<RunTrace> traces;
  traces.reserve(configs.size());
  for (const RunConfig& config : configs) {
    try {
      RecSink sink = sink_factory ? sink_factory(config) : RecSink{};
      traces.push_back(run(config, prepared, cache, sink));
    } catch (const std::exception& e) {
      throw Error("run failed for algorithm '" + config.algorithm +
                  "' (lambda=" + std::to_string(config.lambda) + "): " + e.what());
    }
  }
  return traces;
}

}  // namespace longtail
