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
#include "longtail/recommender/rank_als.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "longtail/kernels/kernels.hpp"
#include "longtail/util/rng.hpp"

namespace longtail {

namespace {

// In-place Cholesky solve of the k x k SPD system a * x = b. Falls back to a
// small ridge bump when a pivot collapses (reg = 0 on degenerate data).
void solve_spd(std::vector<double> a, std::vector<double> b, std::size_t k, double* x) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> l = a;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = l[i * k + j];
        for (std::size_t m = 0; m < j; ++m) sum -= l[i * k + m] * l[j * k + m];
        if (i == j) {
          if (sum <= 0.0 || !std::isfinite(sum)) {
            ok = false;
            break;
          }
          l[i * k + i] = std::sqrt(sum);
        } else {
          l[i * k + j] = sum / l[j * k + j];
        }
      }
    }
    if (ok) {
      std::vector<double> y(k);
      for (std::size_t i = 0; i < k; ++i) {
        double sum = b[i];
        for (std::size_t j = 0; j < i; ++j) sum -= l[i * k + j] * y[j];
        y[i] = sum / l[i * k + i];
      }
      for (std::size_t ii = k; ii-- > 0;) {
        double sum = y[ii];
        for (std::size_t j = ii + 1; j < k; ++j) sum -= l[j * k + ii] * x[j];
        x[ii] = sum / l[ii * k + ii];
      }
      return;
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < k; ++i) trace += a[i * k + i];
    const double bump = 1e-10 * (trace / static_cast<double>(k)) + 1e-12;
    for (std::size_t i = 0; i < k; ++i) a[i * k + i] += bump;
  }
  throw DivergenceError("normal equations not positive definite");
}

struct Csr {
  std::vector<std::int64_t> offsets;
  std::vector<int> cols;
  std::vector<double> vals;
};

Csr build_csr(const Interactions& inter, bool by_user) {
  const int rows = by_user ? inter.users().size() : inter.items().size();
  Csr csr;
  csr.offsets.assign(static_cast<std::size_t>(rows) + 1, 0);
  csr.cols.resize(inter.num_ratings());
  csr.vals.resize(inter.num_ratings());

  std::vector<int> row_of(inter.num_ratings());
  std::vector<int> col_of(inter.num_ratings());
  std::size_t idx = 0;
  for (const Rating& r : inter.ratings()) {
    const int u = inter.users().dense_of(r.user);
    const int v = inter.items().dense_of(r.item);
    row_of[idx] = by_user ? u : v;
    col_of[idx] = by_user ? v : u;
    ++idx;
  }
  for (std::size_t i = 0; i < inter.num_ratings(); ++i) {
    ++csr.offsets[static_cast<std::size_t>(row_of[i]) + 1];
  }
  for (std::size_t r = 1; r < csr.offsets.size(); ++r) csr.offsets[r] += csr.offsets[r - 1];
  std::vector<std::int64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (std::size_t i = 0; i < inter.num_ratings(); ++i) {
    const auto pos = static_cast<std::size_t>(cursor[static_cast<std::size_t>(row_of[i])]++);
    csr.cols[pos] = col_of[i];
    csr.vals[pos] = inter.ratings()[i].value;
  }
  return csr;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

// The ranking objective compares each rated item against the whole catalog,
// with unrated items carrying an implicit rating of zero:
//
//   F = sum_u sum_{i in I_u} sum_{j in I} ((p_u.q_i - p_u.q_j) - (r_ui - r_uj))^2
//
// (r_uj = 0 when u did not rate j). The catalog-wide inner sum is what makes
// unrated items comparable; restricting both indices to rated items leaves
// unrated items unconstrained and the ranker degenerate. Expanding per user
// with e_l = p.q_l - r_ul,
//
//   F_u = V * sum_{i in I_u} e_i^2 + n_u * sum_{l in I} e_l^2 - 2 E_r E_all,
//
// every per-user and per-item subproblem is a small SPD solve over sums that
// are cheap to maintain.
FactorModel train_rank_als(const Interactions& train, const TrainConfig& config,
                           const SweepCallback& on_sweep) {
  if (config.k < 1) throw std::invalid_argument("latent dimension k must be at least 1");
  if (config.sweeps < 1) throw std::invalid_argument("sweeps must be at least 1");
  if (config.regularization < 0.0) {
    throw std::invalid_argument("regularization must be non-negative");
  }
  if (train.num_ratings() == 0) throw EmptyDatasetError("cannot train on empty interactions");

  const auto k = static_cast<std::size_t>(config.k);
  const auto n_users = static_cast<std::size_t>(train.users().size());
  const auto n_items = static_cast<std::size_t>(train.items().size());
  const double catalog = static_cast<double>(n_items);
  const double reg = config.regularization;

  FactorModel model;
  model.k = config.k;
  model.users = train.users();
  model.items = train.items();
  model.regularization = reg;
  model.seed = config.seed;
  model.user_factors.resize(n_users * k);
  model.item_factors.resize(n_items * k);

  Rng rng(config.seed);
  for (double& x : model.user_factors) x = rng.next_double() * 0.1;
  for (double& x : model.item_factors) x = rng.next_double() * 0.1;

  const Csr by_user = build_csr(train, true);
  const Csr by_item = build_csr(train, false);

  double* p = model.user_factors.data();
  double* q = model.item_factors.data();

  std::vector<double> rating_sum(n_users, 0.0);  // r-bar per user
  std::vector<double> profile_len(n_users, 0.0);
  for (std::size_t u = 0; u < n_users; ++u) {
    for (auto e = by_user.offsets[u]; e < by_user.offsets[u + 1]; ++e) {
      rating_sum[u] += by_user.vals[static_cast<std::size_t>(e)];
    }
    profile_len[u] = static_cast<double>(by_user.offsets[u + 1] - by_user.offsets[u]);
  }

  std::vector<double> m(k * k);
  std::vector<double> rhs(k);
  std::vector<double> a_all(k * k);     // sum_j q_j q_j^T
  std::vector<double> q_all(k);         // sum_j q_j
  std::vector<double> a_rated(k * k);   // per user: sum_{i in I_u} q_i q_i^T
  std::vector<double> q_rated(k);       // per user: sum q_i
  std::vector<double> b_rated(k);       // per user: sum r_ui q_i
  std::vector<double> m_global(k * k);  // sum_u n_u p_u p_u^T
  std::vector<double> y_rated(k);       // sum_u (s_u - rbar_u) p_u
  std::vector<double> pred_sum(n_users);  // s_u = sum_{i in I_u} p_u.q_i
  std::vector<double> delta(k);

  for (int sweep = 0; sweep < config.sweeps; ++sweep) {
    try {
      // --- user step: exact joint minimizer given Q ---
      std::fill(a_all.begin(), a_all.end(), 0.0);
      std::fill(q_all.begin(), q_all.end(), 0.0);
      for (std::size_t v = 0; v < n_items; ++v) {
        kernels::rank1_update(a_all.data(), q + v * k, k, 1.0);
        kernels::axpy(1.0, q + v * k, q_all.data(), k);
      }

      for (std::size_t u = 0; u < n_users; ++u) {
        const double n = profile_len[u];
        std::fill(a_rated.begin(), a_rated.end(), 0.0);
        std::fill(q_rated.begin(), q_rated.end(), 0.0);
        std::fill(b_rated.begin(), b_rated.end(), 0.0);
        for (auto e = by_user.offsets[u]; e < by_user.offsets[u + 1]; ++e) {
          const double* qi = q + static_cast<std::size_t>(by_user.cols[static_cast<std::size_t>(e)]) * k;
          const double r = by_user.vals[static_cast<std::size_t>(e)];
          kernels::rank1_update(a_rated.data(), qi, k, 1.0);
          kernels::axpy(1.0, qi, q_rated.data(), k);
          kernels::axpy(r, qi, b_rated.data(), k);
        }
        // M = V*A_r + n*A_all - q_all q_r^T - q_r q_all^T + reg*n*I
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            m[i * k + j] = catalog * a_rated[i * k + j] + n * a_all[i * k + j] -
                           q_all[i] * q_rated[j] - q_rated[i] * q_all[j];
          }
          m[i * k + i] += reg * n;
        }
        for (std::size_t d = 0; d < k; ++d) {
          rhs[d] = (catalog + n) * b_rated[d] - rating_sum[u] * (q_all[d] + q_rated[d]);
        }
        solve_spd(m, rhs, k, p + u * k);
      }

      // --- item step: Gauss-Seidel with running sums kept exact ---
      std::fill(m_global.begin(), m_global.end(), 0.0);
      std::fill(y_rated.begin(), y_rated.end(), 0.0);
      for (std::size_t u = 0; u < n_users; ++u) {
        kernels::rank1_update(m_global.data(), p + u * k, k, profile_len[u]);
        double s = 0.0;
        for (auto e = by_user.offsets[u]; e < by_user.offsets[u + 1]; ++e) {
          s += kernels::dot(p + u * k,
                            q + static_cast<std::size_t>(by_user.cols[static_cast<std::size_t>(e)]) * k, k);
        }
        pred_sum[u] = s;
        kernels::axpy(s - rating_sum[u], p + u * k, y_rated.data(), k);
      }
      std::fill(q_all.begin(), q_all.end(), 0.0);
      for (std::size_t v = 0; v < n_items; ++v) kernels::axpy(1.0, q + v * k, q_all.data(), k);

      for (std::size_t v = 0; v < n_items; ++v) {
        const double support = static_cast<double>(by_item.offsets[v + 1] - by_item.offsets[v]);
        double* qv = q + v * k;

        m = m_global;
        // rhs starts from the all-users term sum_u E_r^{-j}(u) p_u
        for (std::size_t d = 0; d < k; ++d) rhs[d] = y_rated[d];

        for (auto e = by_item.offsets[v]; e < by_item.offsets[v + 1]; ++e) {
          const auto u = static_cast<std::size_t>(by_item.cols[static_cast<std::size_t>(e)]);
          const double r = by_item.vals[static_cast<std::size_t>(e)];
          const double* pu = p + u * k;
          const double err_j = kernels::dot(pu, qv, k) - r;
          const double e_all_wo_j =
              (kernels::dot(pu, q_all.data(), k) - rating_sum[u]) - err_j;
          kernels::rank1_update(m.data(), pu, k, catalog - 2.0);
          // (n_u + V - 2) r_uj  - e_r^{-j} correction  + E_all^{-j}
          kernels::axpy((profile_len[u] + catalog - 2.0) * r - err_j + e_all_wo_j, pu,
                        rhs.data(), k);
        }
        for (std::size_t d = 0; d < k; ++d) m[d * k + d] += reg * support;

        for (std::size_t d = 0; d < k; ++d) delta[d] = -qv[d];
        solve_spd(m, rhs, k, qv);
        kernels::axpy(1.0, qv, delta.data(), k);  // delta = q_new - q_old

        kernels::axpy(1.0, delta.data(), q_all.data(), k);
        for (auto e = by_item.offsets[v]; e < by_item.offsets[v + 1]; ++e) {
          const auto u = static_cast<std::size_t>(by_item.cols[static_cast<std::size_t>(e)]);
          const double shift = kernels::dot(p + u * k, delta.data(), k);
          pred_sum[u] += shift;
          kernels::axpy(shift, p + u * k, y_rated.data(), k);
        }
      }

    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string(e.what()) + " at sweep " +
                            std::to_string(sweep + 1));
    }
    if (!all_finite(model.user_factors) || !all_finite(model.item_factors)) {
      throw DivergenceError("training diverged (non-finite factors) at sweep " +
                            std::to_string(sweep + 1));
    }
    model.trained_sweeps = sweep + 1;
    const double objective = rank_objective(train, model, reg);
    model.objective_log.push_back(objective);
    if (on_sweep) on_sweep(sweep + 1, objective);
  }

  return model;
}

double rank_objective(const Interactions& train, const FactorModel& model,
                      double regularization) {
  const auto k = static_cast<std::size_t>(model.k);
  const auto n_items = static_cast<std::size_t>(model.items.size());
  const double catalog = static_cast<double>(n_items);
  const double* q = model.item_factors.data();

  std::vector<double> a_all(k * k, 0.0);
  std::vector<double> q_all(k, 0.0);
  for (std::size_t v = 0; v < n_items; ++v) {
    kernels::rank1_update(a_all.data(), q + v * k, k, 1.0);
    kernels::axpy(1.0, q + v * k, q_all.data(), k);
  }

  double objective = 0.0;
  double reg_term = 0.0;
  std::vector<std::int64_t> item_support(n_items, 0);
  std::vector<double> tmp(k);

  for (int u = 0; u < train.users().size(); ++u) {
    const auto prof = train.profile(u);
    const double* pu = model.user_factors.data() +
                       static_cast<std::size_t>(model.users.dense_of(train.users().id_of(u))) * k;
    double sum_e = 0.0;        // E_r
    double sum_e2 = 0.0;       // sum of rated e^2
    double sum_r = 0.0;
    double sum_r2 = 0.0;
    std::fill(tmp.begin(), tmp.end(), 0.0);  // b_rated
    for (const Rating& r : prof) {
      const auto v = static_cast<std::size_t>(model.items.dense_of(r.item));
      ++item_support[v];
      const double e = kernels::dot(pu, q + v * k, k) - r.value;
      sum_e += e;
      sum_e2 += e * e;
      sum_r += r.value;
      sum_r2 += r.value * r.value;
      kernels::axpy(r.value, q + v * k, tmp.data(), k);
    }
    const auto n = static_cast<double>(prof.size());

    // sum over the whole catalog of e_l^2 = p'A_all p - 2 p'b_rated + sum r^2
    double quad = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      quad += pu[i] * kernels::dot(a_all.data() + i * k, pu, k);
    }
    const double s2_all = quad - 2.0 * kernels::dot(pu, tmp.data(), k) + sum_r2;
    const double e_all = kernels::dot(pu, q_all.data(), k) - sum_r;

    objective += catalog * sum_e2 + n * s2_all - 2.0 * sum_e * e_all;
    reg_term += n * kernels::dot(pu, pu, k);
  }
  for (std::size_t v = 0; v < n_items; ++v) {
    reg_term += static_cast<double>(item_support[v]) * kernels::dot(q + v * k, q + v * k, k);
  }
  return objective + regularization * reg_term;
}

}  // namespace longtail
