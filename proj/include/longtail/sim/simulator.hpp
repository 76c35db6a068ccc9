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
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "longtail/dataset/types.hpp"
#include "longtail/recommender/model.hpp"
#include "longtail/rerank/xquad.hpp"

namespace longtail {

struct Seeds {
  std::uint64_t split = 0;
  std::uint64_t epoch = 0;
  std::uint64_t serve = 0;
  std::uint64_t train = 0;
};

/// When the ledger absorbs served lists: streaming after every user
/// (default), or once per epoch so every user in an epoch sees the same
/// history snapshot.
enum class LedgerCadence { PerUser, PerEpoch };

struct RunConfig {
  std::string dataset_label;
  std::string algorithm;  // registry label; "base" skips re-ranking
  double lambda = 0.0;
  int n_epochs = 50;
  int candidate_len = 100;
  int output_len = 10;
  Seeds seeds;
  SmoothForm smooth_form = SmoothForm::PerItemMass;
  LedgerCadence cadence = LedgerCadence::PerUser;
  bool normalize_scores = false;  // min-max candidate scores before re-ranking
};

struct EpochResult {
  int epoch = 0;
  double arp = 0.0;
  double lcr = 0.0;
  double clcr = 0.0;
  double ndcg = 0.0;
  int users_evaluated = 0;
  int users_skipped = 0;
};

struct RunTrace {
  RunConfig config;
  std::vector<EpochResult> epochs;
  HistoryLedger final_ledger;
  std::map<UserId, double> per_user_ndcg;  // users with non-empty relevance
  std::map<UserId, double> per_user_arp;   // users with non-empty lists
};

/// One row of the recommendations log.
struct RecRow {
  int epoch = 0;
  UserId user = 0;
  int rank = 0;  // 1-based position in the served list
  ItemId item = 0;
  double score = 0.0;
  Category category = Category::ShortHead;
};

using RecSink = std::function<void(const RecRow&)>;

/// Everything a run consumes besides the scorer. Candidate lists exclude the
/// user's train profile; relevance comes from the test profile.
struct Prepared {
  const Interactions* train = nullptr;
  const Interactions* test = nullptr;
  const CategorySplit* split = nullptr;
  const EpochPlan* plan = nullptr;
};

/// Top-candidate_len lists computed once per user and shared across the
/// algorithms of a suite (the base model never changes between epochs).
class CandidateCache {
 public:
  CandidateCache(const ItemScorer& scorer, const Interactions& train, int candidate_len);
  const ScoredList& get(UserId user);

 private:
  const ItemScorer* scorer_;
  const Interactions* train_;
  int candidate_len_;
  std::unordered_map<UserId, ScoredList> cache_;
};

/// Simulates the epoch sequence for one algorithm configuration. Epochs run
/// in order; users within an epoch are served in a seeded shuffle order; the
/// algorithm's own ledger absorbs every served list per the cadence.
RunTrace run(const RunConfig& config, const Prepared& prepared, CandidateCache& candidates,
             const RecSink& sink = nullptr);

/// Runs several configurations against one prepared dataset and scorer with
/// shared seeds (paired comparison) and a shared candidate cache. A failure
/// in any run aborts the suite naming the offending config.
std::vector<RunTrace> run_suite(
    const std::vector<RunConfig>& configs, const Prepared& prepared,
    const ItemScorer& scorer,
    const std::function<RecSink(const RunConfig&)>& sink_factory = nullptr);

}  // namespace longtail
