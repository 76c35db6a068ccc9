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
#include <filesystem>
#include <fstream>

#include <doctest.h>
#include <json.hpp>

#include "longtail/cli/config.hpp"

using namespace longtail;
namespace fs = std::filesystem;

namespace {

struct TempConfig {
  fs::path path;
  explicit TempConfig(const nlohmann::json& j) {
    path = fs::temp_directory_path() / "longtail_config_test.json";
    std::ofstream out(path);
    out << j.dump(2);
  }
  ~TempConfig() { fs::remove(path); }
};

nlohmann::json valid_config() {
  return nlohmann::json{
      {"dataset", {{"label", "x"}, {"path", "/tmp"}, {"format", "movielens"}}},
      {"lambdas", {{"smooth", 0.1}}},
      {"seeds", {{"split", 1}, {"epoch", 2}, {"serve", 3}, {"train", 4}}},
  };
}

}  // namespace

TEST_CASE("config defaults fill in and seeds flow to the trainer") {
  TempConfig tc(valid_config());
  const ExperimentConfig c = load_experiment_config(tc.path.string(), false);
  CHECK(c.min_user_ratings == 20);
  CHECK(c.min_item_ratings == 20);
  CHECK(c.head_mass == 0.8);
  CHECK(c.test_fraction == 0.2);
  CHECK(c.recommender.k == 10);
  CHECK(c.recommender.sweeps == 30);
  CHECK(c.recommender.regularization == 0.01);
  CHECK(c.recommender.seed == 4);
  CHECK(c.n_epochs == 50);
  CHECK(c.candidate_len == 100);
  CHECK(c.output_len == 10);
  CHECK(c.smooth_form == SmoothForm::PerItemMass);
  CHECK(c.cadence == LedgerCadence::PerUser);
  CHECK(c.lambda_for("smooth") == 0.1);
  CHECK(c.lambda_for("binary") == 0.0);
  CHECK(c.algorithms.size() == 5);
}

TEST_CASE("config rejects bad fields with the field named") {
  auto expect_error = [](nlohmann::json j, const char* needle) {
    TempConfig tc(j);
    try {
      load_experiment_config(tc.path.string(), false);
      FAIL_CHECK("expected ConfigError for " << needle);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  auto j = valid_config();
  j["lambdas"]["smooth"] = -0.5;
  expect_error(j, "lambda");

  j = valid_config();
  j["head_mass"] = 1.5;
  expect_error(j, "head_mass");

  j = valid_config();
  j["candidate_len"] = 5;
  expect_error(j, "candidate_len");

  j = valid_config();
  j["smooth_form"] = "wrong";
  expect_error(j, "smooth_form");

  j = valid_config();
  j["ledger_cadence"] = "hourly";
  expect_error(j, "ledger_cadence");

  j = valid_config();
  j["dataset"]["format"] = "netflix";
  CHECK_THROWS_AS(
      [&] {
        TempConfig tc(j);
        load_experiment_config(tc.path.string(), false);
      }(),
      ConfigError);
}

TEST_CASE("missing data path only matters when data is required") {
  auto j = valid_config();
  j["dataset"]["path"] = "/does/not/exist";
  TempConfig tc(j);
  CHECK_NOTHROW(load_experiment_config(tc.path.string(), false));
  CHECK_THROWS_AS(load_experiment_config(tc.path.string(), true), ConfigError);
}

TEST_CASE("seed override derives all four seeds deterministically") {
  TempConfig tc(valid_config());
  ExperimentConfig a = load_experiment_config(tc.path.string(), false);
  ExperimentConfig b = a;
  override_seeds(a, 99);
  override_seeds(b, 99);
  CHECK(a.seeds.split == b.seeds.split);
  CHECK(a.seeds.train == b.seeds.train);
  CHECK(a.recommender.seed == a.seeds.train);
  override_seeds(b, 100);
  CHECK(a.seeds.split != b.seeds.split);
}
