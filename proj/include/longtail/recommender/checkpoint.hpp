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

#include <string>

#include "longtail/recommender/model.hpp"

namespace longtail {

/// Writes <dir>/model.bin (raw little-endian factor dump with the id maps)
/// and <dir>/model.json (k, sweeps, seed, regularization, dataset hash,
/// objective log). A reloaded model reproduces score/top_n bit-exactly.
void save_model(const FactorModel& model, const std::string& dir,
                const std::string& dataset_hash);

FactorModel load_model(const std::string& dir);

/// Dataset hash recorded alongside a checkpoint, empty if absent.
std::string checkpoint_dataset_hash(const std::string& dir);

}  // namespace longtail
