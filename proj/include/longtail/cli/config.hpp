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
#include <string>
#include <vector>

#include "longtail/dataset/cache.hpp"
#include "longtail/recommender/rank_als.hpp"
#include "longtail/sim/simulator.hpp"

namespace longtail {

/// The declarative experiment description (JSON file). Field names are the
/// contract; see the README for the schema and defaults.
struct ExperimentConfig {
  std::string label = "dataset";
  std::string data_path;
  RatingsFormat format = RatingsFormat::MovieLens1M;
  RatingScale scale;

  int min_user_ratings = 20;
  int min_item_ratings = 20;
  double head_mass = 0.8;
  double test_fraction = 0.2;

  TrainConfig recommender;  // seed filled from seeds.train

  std::vector<std::string> algorithms{"base", "binary", "smooth", "time_binary",
                                      "time_smooth"};
  std::map<std::string, double> lambdas;  // per-algorithm λ, default 0

  int n_epochs = 50;
  int candidate_len = 100;
  int output_len = 10;
  Seeds seeds;
  SmoothForm smooth_form = SmoothForm::PerItemMass;
  LedgerCadence cadence = LedgerCadence::PerUser;
  bool normalize_scores = false;

  std::string out_dir = "out";

  double lambda_for(const std::string& algorithm) const;
  PrepareParams prepare_params() const;

  std::string prepared_dir() const { return out_dir + "/prepared/" + label; }
  std::string model_dir() const { return out_dir + "/model/" + label; }
  std::string runs_dir() const { return out_dir + "/runs/" + label; }
  std::string sweeps_dir() const { return out_dir + "/sweeps"; }
};

/// Parses and validates; throws ConfigError with the offending field. The
/// data path must exist at validation time unless `require_data` is false
/// (train/run only need the prepared cache).
ExperimentConfig load_experiment_config(const std::string& path, bool require_data = true);

/// --seed override: derives all four seeds from one value.
void override_seeds(ExperimentConfig& config, std::uint64_t seed);

}  // namespace longtail
