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

#include <vector>

#include "quditbp/kernels.hpp"

namespace quditbp::kernels {

namespace {
// Fibers are gathered into a stack buffer up to this dimension; larger local
// dimensions (rare) fall back to a heap buffer.
constexpr std::size_t kStackFiber = 32;
}  // namespace

void apply_site_matrix_scalar(Cx* psi, std::size_t n_amps, const Cx* m,
                              std::size_t dim, std::size_t stride) {
  const std::size_t block = dim * stride;
  if (dim <= kStackFiber) {
    Cx fiber[kStackFiber];
    for (std::size_t base = 0; base < n_amps; base += block) {
      for (std::size_t i = 0; i < stride; ++i) {
        Cx* p = psi + base + i;
        for (std::size_t j = 0; j < dim; ++j) fiber[j] = p[j * stride];
        for (std::size_t k = 0; k < dim; ++k) {
          const Cx* row = m + k * dim;
          Cx acc(0.0, 0.0);
          for (std::size_t j = 0; j < dim; ++j) acc += row[j] * fiber[j];
          p[k * stride] = acc;
        }
      }
    }
    return;
  }
  std::vector<Cx> fiber(dim);
  for (std::size_t base = 0; base < n_amps; base += block) {
    for (std::size_t i = 0; i < stride; ++i) {
      Cx* p = psi + base + i;
      for (std::size_t j = 0; j < dim; ++j) fiber[j] = p[j * stride];
      for (std::size_t k = 0; k < dim; ++k) {
        const Cx* row = m + k * dim;
        Cx acc(0.0, 0.0);
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * fiber[j];
        p[k * stride] = acc;
      }
    }
  }
}

double norm_sq_scalar(const Cx* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  }
  return acc;
}

Cx inner_product_scalar(const Cx* a, const Cx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // conj(a) * b expanded to keep the accumulation order fixed
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void matvec_scalar(const Cx* m, const Cx* x, Cx* y, std::size_t rows,
                   std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Cx* row = m + r * cols;
    Cx acc(0.0, 0.0);
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

}  // namespace quditbp::kernels
