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
#include "support/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "longtail/util/rng.hpp"

namespace longtail::testsupport {

std::vector<Rating> generate_ratings(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const int v_count = spec.n_items;
  const int d = spec.taste_dim;
  const int g_count = spec.n_genres;

  // Item exposure weights ~ 1 / rank^s.
  std::vector<double> log_weight(static_cast<std::size_t>(v_count));
  for (int v = 0; v < v_count; ++v) {
    log_weight[static_cast<std::size_t>(v)] =
        -spec.zipf_exponent * std::log(static_cast<double>(v) + 3.0);
  }

  // Popular items get a mild quality head start (z-scored log weight).
  double mean_lw = 0.0;
  for (double lw : log_weight) mean_lw += lw;
  mean_lw /= static_cast<double>(v_count);
  double sd_lw = 0.0;
  for (double lw : log_weight) sd_lw += (lw - mean_lw) * (lw - mean_lw);
  sd_lw = std::sqrt(sd_lw / static_cast<double>(v_count));
  std::vector<double> quality(static_cast<std::size_t>(v_count));
  for (int v = 0; v < v_count; ++v) {
    quality[static_cast<std::size_t>(v)] =
        spec.popularity_quality_boost *
        (log_weight[static_cast<std::size_t>(v)] - mean_lw) / sd_lw;
  }

  // Genre archetypes; items sit near one archetype, which is what keeps a
  // coherent audience behind sparsely rated items.
  std::vector<double> archetype(static_cast<std::size_t>(g_count) * static_cast<std::size_t>(d));
  for (double& x : archetype) x = rng.next_gaussian();
  std::vector<double> item_taste(static_cast<std::size_t>(v_count) * static_cast<std::size_t>(d));
  auto normalize = [d](double* vec) {
    double norm = 0.0;
    for (int f = 0; f < d; ++f) norm += vec[f] * vec[f];
    norm = std::sqrt(norm / static_cast<double>(d));
    if (norm > 0.0) {
      for (int f = 0; f < d; ++f) vec[f] /= norm;
    }
  };
  for (int v = 0; v < v_count; ++v) {
    const int g = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g_count)));
    double* taste = item_taste.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(d);
    for (int f = 0; f < d; ++f) {
      taste[f] = archetype[static_cast<std::size_t>(g * d + f)] +
                 spec.genre_jitter * rng.next_gaussian();
    }
    normalize(taste);
  }

  std::vector<Rating> ratings;
  std::vector<double> keys(static_cast<std::size_t>(v_count));
  std::vector<int> order(static_cast<std::size_t>(v_count));
  std::vector<double> user_taste(static_cast<std::size_t>(d));
  std::vector<double> affinity(static_cast<std::size_t>(v_count));

  for (int u = 0; u < spec.n_users; ++u) {
    // a primary and a secondary genre plus personal jitter
    const int g1 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g_count)));
    const int g2 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g_count)));
    const double a1 = rng.next_double(0.7, 1.2);
    const double a2 = rng.next_double(0.2, 0.7);
    for (int f = 0; f < d; ++f) {
      user_taste[static_cast<std::size_t>(f)] =
          a1 * archetype[static_cast<std::size_t>(g1 * d + f)] +
          a2 * archetype[static_cast<std::size_t>(g2 * d + f)] +
          spec.genre_jitter * rng.next_gaussian();
    }
    normalize(user_taste.data());

    // taste match per item, in rating points
    for (int v = 0; v < v_count; ++v) {
      const double* taste =
          item_taste.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(d);
      double m = 0.0;
      for (int f = 0; f < d; ++f) m += user_taste[static_cast<std::size_t>(f)] * taste[f];
      affinity[static_cast<std::size_t>(v)] = spec.taste_scale * m / static_cast<double>(d);
    }

    const double raw = std::exp(std::log(spec.median_profile) +
                                spec.profile_spread * rng.next_gaussian());
    const int profile = std::clamp(static_cast<int>(std::lround(raw)), spec.min_profile,
                                   std::min(spec.max_profile, v_count));

    // users differ in how far down the popularity curve they wander
    const double temperature =
        1.0 + spec.temperature_spread * (2.0 * rng.next_double() - 1.0);

    // Exposure is popularity bent by taste: people watch their genres.
    // Weighted sampling without replacement via the exponential race.
    for (int v = 0; v < v_count; ++v) {
      double un;
      do {
        un = rng.next_double();
      } while (un <= 0.0);
      const double log_w =
          temperature * log_weight[static_cast<std::size_t>(v)] +
          spec.exposure_taste_pull * std::tanh(affinity[static_cast<std::size_t>(v)]);
      keys[static_cast<std::size_t>(v)] = -std::log(un) / std::exp(log_w);
    }
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + profile, order.end(),
                      [&](int a, int b) {
                        return keys[static_cast<std::size_t>(a)] <
                               keys[static_cast<std::size_t>(b)];
                      });

    for (int pick = 0; pick < profile; ++pick) {
      const int v = order[static_cast<std::size_t>(pick)];
      const double value = spec.rating_center + quality[static_cast<std::size_t>(v)] +
                           affinity[static_cast<std::size_t>(v)] +
                           spec.noise * rng.next_gaussian();
      const double clamped = std::clamp(std::round(value), 1.0, 5.0);
      Rating r;
      r.user = u + 1;
      r.item = v + 1;
      r.value = clamped;
      r.timestamp = 978300000 + static_cast<std::int64_t>(ratings.size());
      ratings.push_back(r);
    }
  }
  return ratings;
}

void write_movielens_file(const std::string& path, const std::vector<Rating>& ratings) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const Rating& r : ratings) {
    out << r.user << "::" << r.item << "::" << r.value << "::"
        << (r.timestamp.has_value() ? *r.timestamp : 0) << "\n";
  }
}

}  // namespace longtail::testsupport
