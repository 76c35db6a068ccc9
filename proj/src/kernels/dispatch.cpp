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
#include <stdexcept>

#include "longtail/kernels/kernels.hpp"

namespace longtail::kernels {

namespace {

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*rank1_update)(double*, const double*, std::size_t, double);
  void (*matvec_rows)(const double*, std::size_t, std::size_t, const double*, double*);
};

constexpr Vtable kScalar{scalar::dot, scalar::axpy, scalar::rank1_update,
                         scalar::matvec_rows};
constexpr Vtable kAvx2{avx2::dot, avx2::axpy, avx2::rank1_update, avx2::matvec_rows};

struct State {
  Backend backend;
  const Vtable* vt;
};

State detect() {
  if (avx2::supported()) return {Backend::Avx2, &kAvx2};
  return {Backend::Scalar, &kScalar};
}

State& state() {
  static State s = detect();
  return s;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  return state().vt->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  state().vt->axpy(alpha, x, y, n);
}

void rank1_update(double* a, const double* x, std::size_t k, double w) {
  state().vt->rank1_update(a, x, k, w);
}

void matvec_rows(const double* rows, std::size_t m, std::size_t k, const double* x,
                 double* out) {
  state().vt->matvec_rows(rows, m, k, x, out);
}

Backend active_backend() { return state().backend; }

const char* backend_name() {
  return state().backend == Backend::Avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
  switch (b) {
    case Backend::Auto:
      state() = detect();
      break;
    case Backend::Scalar:
      state() = {Backend::Scalar, &kScalar};
      break;
    case Backend::Avx2:
      if (!avx2::supported()) throw std::runtime_error("AVX2 not supported on this CPU");
      state() = {Backend::Avx2, &kAvx2};
      break;
  }
}

}  // namespace longtail::kernels
