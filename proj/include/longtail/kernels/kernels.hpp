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

#include <cstddef>

namespace longtail::kernels {

// Dense double-precision primitives behind the factor-model trainer and the
// catalog scorer. Scalar reference implementations are the semantics; the
// AVX2 variants are drop-in replacements selected at runtime and are allowed
// to differ only by floating-point reassociation.

enum class Backend { Auto, Scalar, Avx2 };

double dot(const double* a, const double* b, std::size_t n);

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// a (k x k, row-major) += w * x * x^T
void rank1_update(double* a, const double* x, std::size_t k, double w);

/// out[r] = dot(rows + r*k, x) for r in [0, m). rows is m x k row-major.
void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out);

Backend active_backend();
const char* backend_name();

/// Scalar and Auto always succeed; selecting Avx2 on a CPU without it throws.
void set_backend(Backend b);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank1_update(double* a, const double* x, std::size_t k, double w);
void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out);
}  // namespace scalar

namespace avx2 {
/// True when both the build and the CPU support AVX2.
bool supported();
// Callable only when supported() returns true.
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank1_update(double* a, const double* x, std::size_t k, double w);
void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out);
}  // namespace avx2

}  // namespace longtail::kernels
