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

// Compiled with -mavx2 -mfma; nothing here may run unless avx2::supported().

#include "longtail/kernels/kernels.hpp"

#if defined(LONGTAIL_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace longtail::kernels::avx2 {

#if defined(LONGTAIL_HAVE_AVX2)

bool supported() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

namespace {
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rank1_update(double* a, const double* x, std::size_t k, double w) {
  for (std::size_t r = 0; r < k; ++r) {
    const double wxr = w * x[r];
    axpy(wxr, x, a + r * k, k);
  }
}

void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out) {
  for (std::size_t r = 0; r < m; ++r) out[r] = dot(rows + r * k, x, k);
}

#else  // non-x86 build or compiler without -mavx2: scalar stand-ins, never selected

bool supported() { return false; }

double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
void rank1_update(double* a, const double* x, std::size_t k, double w) {
  scalar::rank1_update(a, x, k, w);
}
void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out) {
  scalar::matvec_rows(rows, m, k, x, out);
}

#endif

}  // namespace longtail::kernels::avx2
