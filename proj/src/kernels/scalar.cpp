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
#include "longtail/kernels/kernels.hpp"

namespace longtail::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rank1_update(double* a, const double* x, std::size_t k, double w) {
  for (std::size_t r = 0; r < k; ++r) {
    const double wxr = w * x[r];
    double* row = a + r * k;
    for (std::size_t c = 0; c < k; ++c) row[c] += wxr * x[c];
  }
}

void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out) {
  for (std::size_t r = 0; r < m; ++r) out[r] = dot(rows + r * k, x, k);
}

}  // namespace longtail::kernels::scalar
