// Copyright 2026 The quditbp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "quditbp/kernels.hpp"

namespace quditbp::kernels {

namespace {

bool avx2_available() {
#if QUDITBP_HAVE_AVX2
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("QUDITBP_KERNEL")) {
    const std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2") {
      if (!avx2_available()) {
        throw std::runtime_error(
            "QUDITBP_KERNEL=avx2 requested but the avx2 backend is "
            "unavailable on this build/CPU");
      }
      return Backend::avx2;
    }
    if (!want.empty()) {
      throw std::runtime_error("unknown QUDITBP_KERNEL value: " + want);
    }
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return avx2_available();
  }
  return false;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                backend_name(b));
  }
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

#if !QUDITBP_HAVE_AVX2
// The AVX2 translation unit is not part of this build; the guards in
// backend_supported/set_backend keep these stubs unreachable.
void apply_site_matrix_avx2(Cx*, std::size_t, const Cx*, std::size_t,
                            std::size_t) {
  throw std::logic_error("avx2 kernels not built");
}
double norm_sq_avx2(const Cx*, std::size_t) {
  throw std::logic_error("avx2 kernels not built");
}
Cx inner_product_avx2(const Cx*, const Cx*, std::size_t) {
  throw std::logic_error("avx2 kernels not built");
}
void matvec_avx2(const Cx*, const Cx*, Cx*, std::size_t, std::size_t) {
  throw std::logic_error("avx2 kernels not built");
}
#endif

void apply_site_matrix(Cx* psi, std::size_t n_amps, const Cx* m,
                       std::size_t dim, std::size_t stride) {
  switch (active_backend()) {
    case Backend::avx2:
      apply_site_matrix_avx2(psi, n_amps, m, dim, stride);
      return;
    case Backend::scalar:
    default:
      apply_site_matrix_scalar(psi, n_amps, m, dim, stride);
      return;
  }
}

double norm_sq(const Cx* v, std::size_t n) {
  switch (active_backend()) {
    case Backend::avx2:
      return norm_sq_avx2(v, n);
    case Backend::scalar:
    default:
      return norm_sq_scalar(v, n);
  }
}

Cx inner_product(const Cx* a, const Cx* b, std::size_t n) {
  switch (active_backend()) {
    case Backend::avx2:
      return inner_product_avx2(a, b, n);
    case Backend::scalar:
    default:
      return inner_product_scalar(a, b, n);
  }
}

void matvec(const Cx* m, const Cx* x, Cx* y, std::size_t rows,
            std::size_t cols) {
  switch (active_backend()) {
    case Backend::avx2:
      matvec_avx2(m, x, y, rows, cols);
      return;
    case Backend::scalar:
    default:
      matvec_scalar(m, x, y, rows, cols);
      return;
  }
}

}  // namespace quditbp::kernels
