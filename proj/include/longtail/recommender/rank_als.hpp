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

#include "longtail/dataset/types.hpp"
#include "longtail/recommender/model.hpp"

namespace longtail {

struct TrainConfig {
  int k = 10;
  int sweeps = 30;
  double regularization = 0.01;
  std::uint64_t seed = 0;
};

/// Called after every sweep with (sweep index, regularized objective).
using SweepCallback = std::function<void(int, double)>;

/// Pairwise learning-to-rank alternating least squares. The objective is the
/// squared error between predicted and observed rating gaps, each rated item
/// paired with the whole catalog (unrated items rate as zero):
///
///   F = sum_u sum_{i in I_u} sum_{j in catalog}
///         ((p_u.q_i - p_u.q_j) - (r_ui - r_uj))^2
///     + reg * (sum_u n_u |p_u|^2 + sum_v n_v |q_v|^2),
///
/// minimized by exact per-user solves and Gauss-Seidel per-item solves, so
/// the objective is non-increasing in every sweep. Deterministic in
/// (train, config). Throws DivergenceError naming the sweep if factors go
/// non-finite.
FactorModel train_rank_als(const Interactions& train, const TrainConfig& config,
                           const SweepCallback& on_sweep = nullptr);

/// The objective above evaluated via per-user sufficient statistics. Cheap
/// enough to call per sweep.
double rank_objective(const Interactions& train, const FactorModel& model,
                      double regularization = 0.0);

}  // namespace longtail
