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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "longtail/sim/simulator.hpp"

namespace longtail {

/// Exact round-trip formatting for CSV doubles (%.17g).
std::string format_double(double v);

/// Header: dataset,algorithm,lambda,epoch,arp,lcr,clcr,ndcg,users_evaluated,users_skipped
void write_metrics_csv(std::ostream& out, const RunTrace& trace);

/// Header: epoch,user,rank,item,score,category. Returns a sink that streams
/// rows in serve order.
void write_rec_header(std::ostream& out);
RecSink make_rec_sink(std::ostream& out);

struct SummaryRow {
  std::string algorithm;
  double lambda = 0.0;
  double avg_lcr = 0.0;       // mean of per-epoch LCR
  double avg_ndcg = 0.0;      // mean over evaluated users
  double avg_arp = 0.0;       // mean of per-epoch ARP
  double final_clcr = 0.0;
  // paired t-tests against the base trace; absent for the base row itself
  std::optional<double> ndcg_p_vs_base;
  std::optional<double> arp_p_vs_base;
};

/// One row per trace, significance computed against the trace whose
/// algorithm label is "base" (if present).
std::vector<SummaryRow> summarize(const std::vector<RunTrace>& traces);

/// Header: dataset,algorithm,lambda,avg_lcr,avg_ndcg10,avg_arp,final_clcr,
///         ndcg_p_vs_base,ndcg_significant,arp_p_vs_base,arp_significant
void write_summary_csv(std::ostream& out, const std::string& dataset,
                       const std::vector<SummaryRow>& rows);

/// Human-readable table mirroring the summary (Average LCR | Average NDCG@10
/// | Average ARP), with significance markers vs. base.
std::string format_summary_table(const std::string& dataset,
                                 const std::vector<SummaryRow>& rows);

}  // namespace longtail
