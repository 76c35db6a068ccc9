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
#include "longtail/recommender/checkpoint.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "longtail/util/errors.hpp"

namespace longtail {

namespace {

constexpr char kMagic[8] = {'L', 'T', 'F', 'M', '0', '0', '0', '1'};

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

void write_vec(std::ostream& out, const std::vector<std::int64_t>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(std::int64_t)));
}

void write_vec(std::ostream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

void save_model(const FactorModel& model, const std::string& dir,
                const std::string& dataset_hash) {
  std::filesystem::create_directories(dir);
  const std::string bin_path = dir + "/model.bin";
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw IoError("cannot write " + bin_path);

  bin.write(kMagic, sizeof(kMagic));
  write_pod(bin, static_cast<std::int64_t>(model.users.size()));
  write_pod(bin, static_cast<std::int64_t>(model.items.size()));
  write_pod(bin, static_cast<std::int64_t>(model.k));
  write_pod(bin, static_cast<std::int64_t>(model.trained_sweeps));
  write_vec(bin, model.users.ids());
  write_vec(bin, model.items.ids());
  write_vec(bin, model.user_factors);
  write_vec(bin, model.item_factors);
  if (!bin) throw IoError("short write to " + bin_path);
  bin.close();

  nlohmann::json manifest{
      {"k", model.k},
      {"sweeps", model.trained_sweeps},
      {"seed", model.seed},
      {"regularization", model.regularization},
      {"dataset_hash", dataset_hash},
      {"objective_variant", "catalog-pairs-implicit-zero"},
      {"objective_log", model.objective_log},
      {"final_objective",
       model.objective_log.empty() ? 0.0 : model.objective_log.back()},
      {"users", model.users.size()},
      {"items", model.items.size()},
  };
  std::ofstream js(dir + "/model.json");
  if (!js) throw IoError("cannot write " + dir + "/model.json");
  js << manifest.dump(2) << "\n";
}

FactorModel load_model(const std::string& dir) {
  const std::string bin_path = dir + "/model.bin";
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw IoError("cannot open model checkpoint: " + bin_path);

  char magic[8];
  bin.read(magic, sizeof(magic));
  if (!bin || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("not a model checkpoint: " + bin_path);
  }

  std::int64_t n_users = 0, n_items = 0, k = 0, sweeps = 0;
  read_pod(bin, n_users);
  read_pod(bin, n_items);
  read_pod(bin, k);
  read_pod(bin, sweeps);
  if (!bin || n_users < 0 || n_items < 0 || k < 1) {
    throw IoError("corrupt model checkpoint header: " + bin_path);
  }

  std::vector<std::int64_t> user_ids(static_cast<std::size_t>(n_users));
  std::vector<std::int64_t> item_ids(static_cast<std::size_t>(n_items));
  bin.read(reinterpret_cast<char*>(user_ids.data()),
           static_cast<std::streamsize>(user_ids.size() * sizeof(std::int64_t)));
  bin.read(reinterpret_cast<char*>(item_ids.data()),
           static_cast<std::streamsize>(item_ids.size() * sizeof(std::int64_t)));

  FactorModel model;
  model.k = static_cast<int>(k);
  model.trained_sweeps = static_cast<int>(sweeps);
  model.user_factors.resize(static_cast<std::size_t>(n_users * k));
  model.item_factors.resize(static_cast<std::size_t>(n_items * k));
  bin.read(reinterpret_cast<char*>(model.user_factors.data()),
           static_cast<std::streamsize>(model.user_factors.size() * sizeof(double)));
  bin.read(reinterpret_cast<char*>(model.item_factors.data()),
           static_cast<std::streamsize>(model.item_factors.size() * sizeof(double)));
  if (!bin) throw IoError("truncated model checkpoint: " + bin_path);

  model.users = IdIndex(std::move(user_ids));
  model.items = IdIndex(std::move(item_ids));

  std::ifstream js(dir + "/model.json");
  if (js) {
    nlohmann::json manifest = nlohmann::json::parse(js, nullptr, false);
    if (!manifest.is_discarded()) {
      model.seed = manifest.value("seed", 0ULL);
      model.regularization = manifest.value("regularization", 0.0);
      model.objective_log = manifest.value("objective_log", std::vector<double>{});
    }
  }
  return model;
}

std::string checkpoint_dataset_hash(const std::string& dir) {
  std::ifstream js(dir + "/model.json");
  if (!js) return {};
  nlohmann::json manifest = nlohmann::json::parse(js, nullptr, false);
  if (manifest.is_discarded()) return {};
  return manifest.value("dataset_hash", std::string{});
}

}  // namespace longtail
