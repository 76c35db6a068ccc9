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
#include "longtail/cli/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "longtail/util/rng.hpp"

namespace longtail {

double ExperimentConfig::lambda_for(const std::string& algorithm) const {
  auto it = lambdas.find(algorithm);
  return it == lambdas.end() ? 0.0 : it->second;
}

PrepareParams ExperimentConfig::prepare_params() const {
  PrepareParams params;
  params.label = label;
  params.source_path = data_path;
  params.format = format;
  params.scale = scale;
  params.min_user_ratings = min_user_ratings;
  params.min_item_ratings = min_item_ratings;
  params.head_mass = head_mass;
  params.test_fraction = test_fraction;
  params.split_seed = seeds.split;
  return params;
}

ExperimentConfig load_experiment_config(const std::string& path, bool require_data) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }

  ExperimentConfig c;
  try {
    const auto& ds = j.at("dataset");
    c.label = ds.value("label", std::string{"dataset"});
    c.data_path = ds.value("path", std::string{});
    c.format = ratings_format_from_string(ds.value("format", "movielens"));
    c.scale.min = ds.value("rating_min", 1.0);
    c.scale.max = ds.value("rating_max", 5.0);

    if (j.contains("filter")) {
      c.min_user_ratings = j["filter"].value("min_user_ratings", 20);
      c.min_item_ratings = j["filter"].value("min_item_ratings", 20);
    }
    c.head_mass = j.value("head_mass", 0.8);
    c.test_fraction = j.value("test_fraction", 0.2);

    if (j.contains("recommender")) {
      const auto& r = j["recommender"];
      c.recommender.k = r.value("k", 10);
      c.recommender.sweeps = r.value("sweeps", 30);
      c.recommender.regularization = r.value("regularization", 0.01);
    }

    if (j.contains("algorithms")) {
      c.algorithms = j["algorithms"].get<std::vector<std::string>>();
    }
    if (j.contains("lambdas")) {
      c.lambdas = j["lambdas"].get<std::map<std::string, double>>();
    }

    c.n_epochs = j.value("n_epochs", 50);
    c.candidate_len = j.value("candidate_len", 100);
    c.output_len = j.value("output_len", 10);

    if (j.contains("seeds")) {
      const auto& s = j["seeds"];
      c.seeds.split = s.value("split", std::uint64_t{0});
      c.seeds.epoch = s.value("epoch", std::uint64_t{0});
      c.seeds.serve = s.value("serve", std::uint64_t{0});
      c.seeds.train = s.value("train", std::uint64_t{0});
    }
    c.recommender.seed = c.seeds.train;

    const std::string form = j.value("smooth_form", "per_item_mass");
    if (form == "per_item_mass") {
      c.smooth_form = SmoothForm::PerItemMass;
    } else if (form == "constant_fraction") {
      c.smooth_form = SmoothForm::ConstantFraction;
    } else {
      throw ConfigError("smooth_form must be per_item_mass or constant_fraction, got '" +
                        form + "'");
    }

    const std::string cadence = j.value("ledger_cadence", "per_user");
    if (cadence == "per_user") {
      c.cadence = LedgerCadence::PerUser;
    } else if (cadence == "per_epoch") {
      c.cadence = LedgerCadence::PerEpoch;
    } else {
      throw ConfigError("ledger_cadence must be per_user or per_epoch, got '" + cadence + "'");
    }

    c.normalize_scores = j.value("normalize_scores", false);
    c.out_dir = j.value("out_dir", std::string{"out"});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }

  // validation
  if (require_data) {
    if (c.data_path.empty()) throw ConfigError("dataset.path is required");
    if (!std::filesystem::exists(c.data_path)) {
      throw ConfigError("dataset.path does not exist: " + c.data_path);
    }
  }
  if (!(c.head_mass > 0.0 && c.head_mass < 1.0)) {
    throw ConfigError("head_mass must lie strictly between 0 and 1");
  }
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie strictly between 0 and 1");
  }
  if (c.recommender.k < 1) throw ConfigError("recommender.k must be at least 1");
  if (c.recommender.sweeps < 1) throw ConfigError("recommender.sweeps must be at least 1");
  if (c.n_epochs < 1) throw ConfigError("n_epochs must be at least 1");
  if (c.output_len < 1) throw ConfigError("output_len must be at least 1");
  if (c.candidate_len < c.output_len) {
    throw ConfigError("candidate_len must be at least output_len");
  }
  if (c.scale.min >= c.scale.max) throw ConfigError("rating_min must be below rating_max");
  for (const auto& [algorithm, lambda] : c.lambdas) {
    if (lambda < 0.0) {
      throw ConfigError("lambda for '" + algorithm + "' must be non-negative");
    }
  }
  if (c.algorithms.empty()) throw ConfigError("algorithms list must not be empty");
  return c;
}

void override_seeds(ExperimentConfig& config, std::uint64_t seed) {
  config.seeds.split = derive_seed(seed, 1);
  config.seeds.epoch = derive_seed(seed, 2);
  config.seeds.serve = derive_seed(seed, 3);
  config.seeds.train = derive_seed(seed, 4);
  config.recommender.seed = config.seeds.train;
}

}  // namespace longtail
