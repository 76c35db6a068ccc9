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
#include "longtail/sim/trace_io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "longtail/metrics/metrics.hpp"

namespace longtail {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_metrics_csv(std::ostream& out, const RunTrace& trace) {
  out << "dataset,algorithm,lambda,epoch,arp,lcr,clcr,ndcg,users_evaluated,users_skipped\n";
  for (const EpochResult& e : trace.epochs) {
    out << trace.config.dataset_label << ',' << trace.config.algorithm << ','
        << format_double(trace.config.lambda) << ',' << e.epoch << ','
        << format_double(e.arp) << ',' << format_double(e.lcr) << ','
        << format_double(e.clcr) << ',' << format_double(e.ndcg) << ','
        << e.users_evaluated << ',' << e.users_skipped << '\n';
  }
}

void write_rec_header(std::ostream& out) {
  out << "epoch,user,rank,item,score,category\n";
}

RecSink make_rec_sink(std::ostream& out) {
  return [&out](const RecRow& row) {
    out << row.epoch << ',' << row.user << ',' << row.rank << ',' << row.item << ','
        << format_double(row.score) << ','
        << (row.category == Category::LongTail ? "tail" : "head") << '\n';
  };
}

std::vector<SummaryRow> summarize(const std::vector<RunTrace>& traces) {
  const RunTrace* base = nullptr;
  for (const RunTrace& t : traces) {
    if (t.config.algorithm == "base") {
      base = &t;
      break;
    }
  }

  std::vector<SummaryRow> rows;
  rows.reserve(traces.size());
  for (const RunTrace& t : traces) {
    SummaryRow row;
    row.algorithm = t.config.algorithm;
    row.lambda = t.config.lambda;

    double lcr_sum = 0.0;
    double arp_sum = 0.0;
    for (const EpochResult& e : t.epochs) {
      lcr_sum += e.lcr;
      arp_sum += e.arp;
    }
    const auto n_epochs = static_cast<double>(t.epochs.size());
    row.avg_lcr = n_epochs > 0 ? lcr_sum / n_epochs : 0.0;
    row.avg_arp = n_epochs > 0 ? arp_sum / n_epochs : 0.0;
    row.final_clcr = t.epochs.empty() ? 0.0 : t.epochs.back().clcr;

    double ndcg_sum = 0.0;
    for (const auto& [user, v] : t.per_user_ndcg) {
      (void)user;
      ndcg_sum += v;
    }
    row.avg_ndcg = t.per_user_ndcg.empty()
                       ? 0.0
                       : ndcg_sum / static_cast<double>(t.per_user_ndcg.size());

    if (base != nullptr && &t != base) {
      if (t.per_user_ndcg.size() >= 2 && t.per_user_ndcg.size() == base->per_user_ndcg.size()) {
        row.ndcg_p_vs_base = paired_significance(t.per_user_ndcg, base->per_user_ndcg).p_value;
      }
      if (t.per_user_arp.size() >= 2 && t.per_user_arp.size() == base->per_user_arp.size()) {
        row.arp_p_vs_base = paired_significance(t.per_user_arp, base->per_user_arp).p_value;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::string& dataset,
                       const std::vector<SummaryRow>& rows) {
  out << "dataset,algorithm,lambda,avg_lcr,avg_ndcg10,avg_arp,final_clcr,"
         "ndcg_p_vs_base,ndcg_significant,arp_p_vs_base,arp_significant\n";
  auto opt = [](const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : std::string{};
  };
  auto sig = [](const std::optional<double>& v) {
    if (!v.has_value()) return std::string{};
    return std::string(*v <= 0.05 ? "yes" : "no");
  };
  for (const SummaryRow& r : rows) {
    out << dataset << ',' << r.algorithm << ',' << format_double(r.lambda) << ','
        << format_double(r.avg_lcr) << ',' << format_double(r.avg_ndcg) << ','
        << format_double(r.avg_arp) << ',' << format_double(r.final_clcr) << ','
        << opt(r.ndcg_p_vs_base) << ',' << sig(r.ndcg_p_vs_base) << ','
        << opt(r.arp_p_vs_base) << ',' << sig(r.arp_p_vs_base) << '\n';
  }
}

std::string format_summary_table(const std::string& dataset,
                                 const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "dataset: " << dataset << "\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %-8s %-12s %-16s %-12s %-10s\n", "algorithm",
                "lambda", "Average LCR", "Average NDCG@10", "Average ARP", "final CLCR");
  out << line;
  for (const SummaryRow& r : rows) {
    // '=' marks NDCG statistically indistinguishable from base (p > 0.05),
    // '*' marks a significant difference.
    std::string mark;
    if (r.ndcg_p_vs_base.has_value()) mark = *r.ndcg_p_vs_base > 0.05 ? "=" : "*";
    std::snprintf(line, sizeof(line), "%-12s %-8.4g %-12.5f %.4f%-10s %-12.1f %-10.5f\n",
                  r.algorithm.c_str(), r.lambda, r.avg_lcr, r.avg_ndcg, mark.c_str(),
                  r.avg_arp, r.final_clcr);
    out << line;
  }
  return out.str();
}

}  // namespace longtail
