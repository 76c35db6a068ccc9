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

// longtail: prepare ratings data, train the pairwise ranker, and simulate
// epoch-wise re-ranked recommendation delivery.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "longtail/cli/config.hpp"
#include "longtail/dataset/cache.hpp"
#include "longtail/kernels/kernels.hpp"
#include "longtail/recommender/checkpoint.hpp"
#include "longtail/recommender/rank_als.hpp"
#include "longtail/sim/simulator.hpp"
#include "longtail/sim/trace_io.hpp"

namespace {

using namespace longtail;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;  // overrides config.out_dir when set
  std::optional<std::uint64_t> seed;
};

ExperimentConfig load_config(const GlobalOpts& opts, bool require_data) {
  ExperimentConfig config = load_experiment_config(opts.config_path, require_data);
  if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
  if (opts.seed.has_value()) override_seeds(config, *opts.seed);
  return config;
}

int cmd_prepare(const GlobalOpts& opts) {
  ExperimentConfig config = load_config(opts, true);
  const PrepareParams params = config.prepare_params();
  const std::string dir = config.prepared_dir();

  const std::string fingerprint = prepare_fingerprint(params);
  if (cache_matches(dir, fingerprint)) {
    std::cout << "prepared cache is up to date (" << dir << ", fingerprint " << fingerprint
              << "); nothing to do\n";
    return 0;
  }

  PreparedDataset prepared;
  try {
    prepared = prepare_dataset(params);
  } catch (const Error& e) {
    throw Error("preparing " + params.source_path + ": " + e.what());
  }
  write_cache(prepared, dir);
  std::cout << prepare_report(prepared) << "cache written to " << dir << "\n";
  return 0;
}

int cmd_train(const GlobalOpts& opts) {
  ExperimentConfig config = load_config(opts, false);
  PreparedDataset prepared = load_cache(config.prepared_dir());

  TrainConfig tc = config.recommender;
  std::cout << "training rank_als: k=" << tc.k << " sweeps=" << tc.sweeps
            << " reg=" << tc.regularization << " seed=" << tc.seed << " ("
            << kernels::backend_name() << " kernels)\n";
  FactorModel model = train_rank_als(prepared.split.train, tc, [](int sweep, double objective) {
    std::printf("sweep %3d  objective %.10e\n", sweep, objective);
  });
  save_model(model, config.model_dir(), prepared.fingerprint);
  std::cout << "final objective " << format_double(model.objective_log.back())
            << "; checkpoint written to " << config.model_dir() << "\n";
  return 0;
}

// Shared by run and sweep: load cache + checkpoint, derive the epoch plan.
struct LoadedExperiment {
  PreparedDataset prepared;
  FactorModel model;
  EpochPlan plan;
  Prepared bundle;
};

LoadedExperiment load_experiment(const ExperimentConfig& config) {
  LoadedExperiment le;
  le.prepared = load_cache(config.prepared_dir());
  if (!std::filesystem::exists(config.model_dir() + "/model.bin")) {
    throw IoError("model checkpoint not found in " + config.model_dir() +
                  " (run `longtail train --config <config>` first)");
  }
  le.model = load_model(config.model_dir());
  const std::string trained_on = checkpoint_dataset_hash(config.model_dir());
  if (!trained_on.empty() && trained_on != le.prepared.fingerprint) {
    throw ConfigError("model checkpoint was trained on dataset " + trained_on +
                      " but the prepared cache has fingerprint " + le.prepared.fingerprint +
                      "; re-run train");
  }
  le.plan = assign_epochs(le.prepared.split.test.users().ids(), config.n_epochs,
                          config.seeds.epoch);
  le.bundle = Prepared{&le.prepared.split.train, &le.prepared.split.test,
                       &le.prepared.categories, &le.plan};
  return le;
}

RunConfig make_run_config(const ExperimentConfig& config, const std::string& algorithm,
                          double lambda) {
  RunConfig rc;
  rc.dataset_label = config.label;
  rc.algorithm = algorithm;
  rc.lambda = lambda;
  rc.n_epochs = config.n_epochs;
  rc.candidate_len = config.candidate_len;
  rc.output_len = config.output_len;
  rc.seeds = config.seeds;
  rc.smooth_form = config.smooth_form;
  rc.cadence = config.cadence;
  rc.normalize_scores = config.normalize_scores;
  return rc;
}

int cmd_run(const GlobalOpts& opts) {
  ExperimentConfig config = load_config(opts, false);
  // Fail fast on unknown labels before any heavy lifting.
  for (const std::string& algorithm : config.algorithms) resolve_algorithm(algorithm);

  LoadedExperiment le = load_experiment(config);
  FactorScorer scorer(le.model);

  std::vector<RunConfig> run_configs;
  for (const std::string& algorithm : config.algorithms) {
    run_configs.push_back(make_run_config(config, algorithm, config.lambda_for(algorithm)));
  }

  const std::string dir = config.runs_dir();
  std::filesystem::create_directories(dir);

  std::vector<std::unique_ptr<std::ofstream>> rec_files;
  auto sink_factory = [&](const RunConfig& rc) -> RecSink {
    auto file = std::make_unique<std::ofstream>(dir + "/" + rc.algorithm + "_recs.csv");
    if (!*file) throw IoError("cannot write recommendations log in " + dir);
    write_rec_header(*file);
    RecSink sink = make_rec_sink(*file);
    rec_files.push_back(std::move(file));
    return sink;
  };

  std::vector<RunTrace> traces = run_suite(run_configs, le.bundle, scorer, sink_factory);

  for (const RunTrace& trace : traces) {
    std::ofstream out(dir + "/" + trace.config.algorithm + "_metrics.csv");
    if (!out) throw IoError("cannot write metrics csv in " + dir);
    write_metrics_csv(out, trace);
  }

  const std::vector<SummaryRow> summary = summarize(traces);
  std::ofstream summary_out(dir + "/summary.csv");
  write_summary_csv(summary_out, config.label, summary);
  std::cout << format_summary_table(config.label, summary)
            << "('=' NDCG indistinguishable from base at p > 0.05, '*' significant; "
               "outputs in "
            << dir << ")\n";
  return 0;
}

int cmd_sweep(const GlobalOpts& opts, const std::string& algorithm,
              std::vector<double> lambdas) {
  ExperimentConfig config = load_config(opts, false);
  if (lambdas.empty()) throw ConfigError("sweep needs at least one lambda value");
  const std::optional<XquadVariant> variant = resolve_algorithm(algorithm);
  (void)variant;

  std::sort(lambdas.begin(), lambdas.end());
  std::vector<double> unique_lambdas;
  for (double l : lambdas) {
    if (!unique_lambdas.empty() && unique_lambdas.back() == l) {
      std::cerr << "warning: duplicate lambda " << l << " dropped\n";
      continue;
    }
    unique_lambdas.push_back(l);
  }

  LoadedExperiment le = load_experiment(config);
  FactorScorer scorer(le.model);

  std::vector<RunConfig> run_configs;
  for (double l : unique_lambdas) {
    run_configs.push_back(make_run_config(config, algorithm, l));
  }
  std::vector<RunTrace> traces = run_suite(run_configs, le.bundle, scorer);

  std::filesystem::create_directories(config.sweeps_dir());
  const std::string path =
      config.sweeps_dir() + "/" + config.label + "_" + algorithm + "_sweep.csv";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "lambda,mean_lcr,mean_ndcg\n";
  for (const RunTrace& trace : traces) {
    double lcr_sum = 0.0;
    for (const EpochResult& e : trace.epochs) lcr_sum += e.lcr;
    const double mean_lcr =
        trace.epochs.empty() ? 0.0 : lcr_sum / static_cast<double>(trace.epochs.size());
    double ndcg_sum = 0.0;
    for (const auto& [user, v] : trace.per_user_ndcg) {
      (void)user;
      ndcg_sum += v;
    }
    const double mean_ndcg =
        trace.per_user_ndcg.empty()
            ? 0.0
            : ndcg_sum / static_cast<double>(trace.per_user_ndcg.size());
    out << format_double(trace.config.lambda) << ',' << format_double(mean_lcr) << ','
        << format_double(mean_ndcg) << '\n';
    std::printf("lambda %-10.6g mean LCR %.6f mean NDCG@%d %.6f\n", trace.config.lambda,
                mean_lcr, config.output_len, mean_ndcg);
  }
  std::cout << "sweep written to " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // kernel backend override, mostly for cross-machine reproducibility checks
  if (const char* backend = std::getenv("LONGTAIL_KERNELS")) {
    const std::string b = backend;
    try {
      if (b == "scalar") {
        kernels::set_backend(kernels::Backend::Scalar);
      } else if (b == "avx2") {
        kernels::set_backend(kernels::Backend::Avx2);
      } else if (b != "auto" && !b.empty()) {
        std::cerr << "error: LONGTAIL_KERNELS must be auto, scalar or avx2\n";
        return 1;
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }

  CLI::App app{"longtail: temporal long-tail re-ranking for recommender systems"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--config", opts.config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", opts.out_dir, "output directory (overrides config out_dir)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "override all config seeds");

  auto* prepare = app.add_subcommand("prepare", "parse, filter, split and cache the dataset");
  auto* train = app.add_subcommand("train", "train the base ranker on the prepared cache");
  auto* run = app.add_subcommand("run", "simulate epochs for the configured algorithms");
  auto* sweep = app.add_subcommand("sweep", "run one algorithm over a list of lambdas");

  std::string sweep_algorithm;
  std::vector<double> sweep_lambdas;
  sweep->add_option("--algorithm", sweep_algorithm, "registry label")->required();
  sweep->add_option("--lambdas", sweep_lambdas, "lambda values")->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) opts.seed = seed_value;

  try {
    if (prepare->parsed()) return cmd_prepare(opts);
    if (train->parsed()) return cmd_train(opts);
    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) return cmd_sweep(opts, sweep_algorithm, sweep_lambdas);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
