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

// Drives the actual `longtail` binary (path in $LONGTAIL_CLI) against a tiny
// synthetic dataset.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "support/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("LONGTAIL_CLI");
  REQUIRE_MESSAGE(env != nullptr, "LONGTAIL_CLI must point at the longtail binary");
  return env;
}

struct CliResult {
  int exit_code = 0;
  std::string output;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli_output.txt";
  const std::string cmd =
      "cd '" + dir.string() + "' && '" + cli_path() + "' " + args + " > '" +
      log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A throwaway working directory with ratings.dat and config.json inside.
struct Workspace {
  fs::path dir;

  explicit Workspace(const std::string& name) {
    dir = fs::temp_directory_path() / ("longtail_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);

    longtail::testsupport::SyntheticSpec spec;
    spec.n_users = 90;
    spec.n_items = 70;
    spec.median_profile = 28;
    spec.min_profile = 22;
    spec.max_profile = 45;
    spec.seed = 42;
    longtail::testsupport::write_movielens_file((dir / "ratings.dat").string(),
                                                longtail::testsupport::generate_ratings(spec));
  }
  ~Workspace() { fs::remove_all(dir); }

  void write_config(const nlohmann::json& overrides = {}) {
    nlohmann::json config{
        {"dataset",
         {{"label", "tiny"}, {"path", (dir / "ratings.dat").string()}, {"format", "movielens"}}},
        {"filter", {{"min_user_ratings", 15}, {"min_item_ratings", 3}}},
        {"head_mass", 0.8},
        {"test_fraction", 0.2},
        {"recommender", {{"k", 4}, {"sweeps", 6}, {"regularization", 0.05}}},
        {"algorithms", {"base", "binary", "smooth", "time_binary", "time_smooth"}},
        {"lambdas",
         {{"binary", 0.1}, {"smooth", 0.1}, {"time_binary", 0.1}, {"time_smooth", 0.05}}},
        {"n_epochs", 5},
        {"candidate_len", 30},
        {"output_len", 10},
        {"seeds", {{"split", 11}, {"epoch", 12}, {"serve", 13}, {"train", 14}}},
        {"out_dir", (dir / "out").string()},
    };
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
      config[it.key()] = it.value();
    }
    std::ofstream out(dir / "config.json");
    out << config.dump(2);
  }
};

}  // namespace

TEST_CASE("prepare writes a cache and is idempotent on re-run") {
  Workspace ws("prepare");
  ws.write_config();

  const CliResult first = run_cli("--config config.json prepare", ws.dir);
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("after filtering") != std::string::npos);
  CHECK(fs::exists(ws.dir / "out/prepared/tiny/train.tsv"));
  CHECK(fs::exists(ws.dir / "out/prepared/tiny/test.tsv"));
  CHECK(fs::exists(ws.dir / "out/prepared/tiny/manifest.json"));

  const std::string manifest_before = read_file(ws.dir / "out/prepared/tiny/manifest.json");
  const CliResult second = run_cli("--config config.json prepare", ws.dir);
  CHECK(second.exit_code == 0);
  CHECK(second.output.find("nothing to do") != std::string::npos);
  CHECK(read_file(ws.dir / "out/prepared/tiny/manifest.json") == manifest_before);
}

TEST_CASE("train without a prepared cache names the missing step") {
  Workspace ws("train_no_cache");
  ws.write_config();
  const CliResult result = run_cli("--config config.json train", ws.dir);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("prepare") != std::string::npos);
}

TEST_CASE("training log shows a non-increasing objective and reruns are identical") {
  Workspace ws("train");
  ws.write_config();
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);

  const CliResult train = run_cli("--config config.json train", ws.dir);
  REQUIRE(train.exit_code == 0);

  std::vector<double> objectives;
  std::istringstream lines(train.output);
  std::string line;
  while (std::getline(lines, line)) {
    double value = 0.0;
    int sweep = 0;
    if (std::sscanf(line.c_str(), "sweep %d objective %lf", &sweep, &value) == 2) {
      objectives.push_back(value);
    }
  }
  REQUIRE(objectives.size() == 6);
  for (std::size_t i = 1; i < objectives.size(); ++i) {
    CHECK(objectives[i] <= objectives[i - 1] * (1.0 + 1e-6));
  }

  const std::string model_bin = read_file(ws.dir / "out/model/tiny/model.bin");
  REQUIRE(run_cli("--config config.json train", ws.dir).exit_code == 0);
  CHECK(read_file(ws.dir / "out/model/tiny/model.bin") == model_bin);
}

TEST_CASE("full pipeline: run emits csvs, lambda-zero rows equal base, reruns byte-identical") {
  Workspace ws("run");
  // all lambdas zero: every algorithm must reproduce the base output
  ws.write_config({{"lambdas",
                    {{"binary", 0.0}, {"smooth", 0.0}, {"time_binary", 0.0},
                     {"time_smooth", 0.0}}}});
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);
  REQUIRE(run_cli("--config config.json train", ws.dir).exit_code == 0);

  const CliResult first = run_cli("--config config.json run", ws.dir);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output.find("Average LCR") != std::string::npos);
  CHECK(first.output.find("Average NDCG@10") != std::string::npos);
  CHECK(first.output.find("Average ARP") != std::string::npos);

  const fs::path runs = ws.dir / "out/runs/tiny";
  for (const char* algorithm : {"base", "binary", "smooth", "time_binary", "time_smooth"}) {
    CHECK(fs::exists(runs / (std::string(algorithm) + "_metrics.csv")));
    CHECK(fs::exists(runs / (std::string(algorithm) + "_recs.csv")));
  }

  // identity: recommendation logs match the base log except for the score column
  auto strip_scores = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
      std::size_t fields = 0, score_start = 0, score_end = line.size();
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == ',') {
          ++fields;
          if (fields == 4) score_start = i;
          if (fields == 5) score_end = i;
        }
      }
      out += line.substr(0, score_start) + line.substr(score_end) + "\n";
    }
    return out;
  };
  const std::string base_log = strip_scores(read_file(runs / "base_recs.csv"));
  for (const char* algorithm : {"binary", "smooth", "time_binary", "time_smooth"}) {
    CHECK(strip_scores(read_file(runs / (std::string(algorithm) + "_recs.csv"))) == base_log);
  }

  // byte-identical reruns (lists and metrics)
  const std::string summary = read_file(runs / "summary.csv");
  const std::string base_metrics = read_file(runs / "base_metrics.csv");
  REQUIRE(run_cli("--config config.json run", ws.dir).exit_code == 0);
  CHECK(read_file(runs / "summary.csv") == summary);
  CHECK(read_file(runs / "base_metrics.csv") == base_metrics);
  CHECK(strip_scores(read_file(runs / "smooth_recs.csv")) == base_log);
}

TEST_CASE("unknown algorithm labels fail with the registry listed") {
  Workspace ws("unknown_algo");
  ws.write_config({{"algorithms", {"base", "bpr"}}});
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);
  REQUIRE(run_cli("--config config.json train", ws.dir).exit_code == 0);
  const CliResult result = run_cli("--config config.json run", ws.dir);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("unknown algorithm 'bpr'") != std::string::npos);
  CHECK(result.output.find("time_smooth") != std::string::npos);
  CHECK(result.output.find("reg (out of scope)") != std::string::npos);
}

TEST_CASE("the reserved reg slot errors as out of scope") {
  Workspace ws("reg_algo");
  ws.write_config({{"algorithms", {"base", "reg"}}});
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);
  REQUIRE(run_cli("--config config.json train", ws.dir).exit_code == 0);
  const CliResult result = run_cli("--config config.json run", ws.dir);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("out of scope") != std::string::npos);
}

TEST_CASE("--seed rewrites the cache under a new fingerprint") {
  Workspace ws("seed_override");
  ws.write_config();
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);
  const std::string manifest = read_file(ws.dir / "out/prepared/tiny/manifest.json");

  const CliResult overridden = run_cli("--config config.json --seed 777 prepare", ws.dir);
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.output.find("nothing to do") == std::string::npos);
  CHECK(read_file(ws.dir / "out/prepared/tiny/manifest.json") != manifest);
}

TEST_CASE("run refuses a checkpoint trained on a different prepared dataset") {
  Workspace ws("stale_model");
  ws.write_config();
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);
  REQUIRE(run_cli("--config config.json train", ws.dir).exit_code == 0);
  // re-prepare under a different split seed: new fingerprint, stale model
  REQUIRE(run_cli("--config config.json --seed 31337 prepare", ws.dir).exit_code == 0);
  const CliResult result = run_cli("--config config.json --seed 31337 run", ws.dir);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("re-run train") != std::string::npos);
}

TEST_CASE("sweep dedupes lambdas and lambda zero matches the base run") {
  Workspace ws("sweep");
  ws.write_config();
  REQUIRE(run_cli("--config config.json prepare", ws.dir).exit_code == 0);
  REQUIRE(run_cli("--config config.json train", ws.dir).exit_code == 0);
  REQUIRE(run_cli("--config config.json run", ws.dir).exit_code == 0);

  const CliResult sweep =
      run_cli("--config config.json sweep --algorithm smooth --lambdas 0.1 0 0.1", ws.dir);
  REQUIRE(sweep.exit_code == 0);
  CHECK(sweep.output.find("duplicate lambda") != std::string::npos);

  const std::string csv = read_file(ws.dir / "out/sweeps/tiny_smooth_sweep.csv");
  std::istringstream in(csv);
  std::string header, row0, row1, extra;
  std::getline(in, header);
  CHECK(header == "lambda,mean_lcr,mean_ndcg");
  REQUIRE(std::getline(in, row0));
  REQUIRE(std::getline(in, row1));
  CHECK_FALSE(std::getline(in, extra));  // two unique lambdas only
  CHECK(row0.substr(0, 2) == "0,");

  // lambda 0 row equals the base run's summary values
  const std::string summary = read_file(ws.dir / "out/runs/tiny/summary.csv");
  std::istringstream srows(summary);
  std::string srow;
  std::getline(srows, srow);  // header
  std::string base_row;
  while (std::getline(srows, srow)) {
    if (srow.find(",base,") != std::string::npos) base_row = srow;
  }
  REQUIRE_FALSE(base_row.empty());
  // summary: dataset,algorithm,lambda,avg_lcr,avg_ndcg10,...
  std::vector<std::string> fields;
  std::stringstream fs_(base_row);
  std::string field;
  while (std::getline(fs_, field, ',')) fields.push_back(field);
  const std::string expected_row = "0," + fields[3] + "," + fields[4];
  CHECK(row0 == expected_row);
}
