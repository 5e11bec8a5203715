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

// AVX2+FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; callers reach it through the runtime dispatcher.
//
// Complex doubles are packed [re0, im0, re1, im1] per 256-bit register, two
// amplitudes at a time. For a scalar weight w and packed amplitudes v:
//   swap(v)            = [im0, re0, im1, re1]
//   fmaddsub(wr, v, wi*swap(v))
//     even lanes: wr*re - wi*im   (real part)
//     odd  lanes: wr*im + wi*re   (imag part)

#include <immintrin.h>

#include "quditbp/kernels.hpp"

namespace quditbp::kernels {

namespace {

constexpr std::size_t kMaxSimdDim = 16;

inline __m256d cmul_acc(__m256d acc, double wr, double wi, __m256d v) {
  const __m256d vs = _mm256_permute_pd(v, 0x5);
  const __m256d t = _mm256_mul_pd(_mm256_set1_pd(wi), vs);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(_mm256_set1_pd(wr), v, t));
}

// stride >= 2: vectorize across the stride axis, two fiber positions at once.
void apply_strided(Cx* psi, std::size_t n_amps, const Cx* m, std::size_t dim,
                   std::size_t stride) {
  const std::size_t block = dim * stride;
  __m256d fiber[kMaxSimdDim];
  for (std::size_t base = 0; base < n_amps; base += block) {
    std::size_t i = 0;
    for (; i + 2 <= stride; i += 2) {
      double* p = reinterpret_cast<double*>(psi + base + i);
      for (std::size_t j = 0; j < dim; ++j) {
        fiber[j] = _mm256_loadu_pd(p + 2 * j * stride);
      }
      for (std::size_t k = 0; k < dim; ++k) {
        const Cx* row = m + k * dim;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
          acc = cmul_acc(acc, row[j].real(), row[j].imag(), fiber[j]);
        }
        _mm256_storeu_pd(p + 2 * k * stride, acc);
      }
    }
    for (; i < stride; ++i) {
      // odd-stride remainder, one fiber position
      Cx tmp[kMaxSimdDim];
      Cx* p = psi + base + i;
      for (std::size_t j = 0; j < dim; ++j) tmp[j] = p[j * stride];
      for (std::size_t k = 0; k < dim; ++k) {
        const Cx* row = m + k * dim;
        Cx acc(0.0, 0.0);
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * tmp[j];
        p[k * stride] = acc;
      }
    }
  }
}

// stride == 1: fibers are contiguous; process two fibers per register.
void apply_contiguous(Cx* psi, std::size_t n_amps, const Cx* m,
                      std::size_t dim) {
  __m256d fiber[kMaxSimdDim];
  std::size_t base = 0;
  for (; base + 2 * dim <= n_amps; base += 2 * dim) {
    const double* lo = reinterpret_cast<const double*>(psi + base);
    const double* hi = reinterpret_cast<const double*>(psi + base + dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const __m128d a = _mm_loadu_pd(lo + 2 * j);
      const __m128d b = _mm_loadu_pd(hi + 2 * j);
      fiber[j] = _mm256_insertf128_pd(_mm256_castpd128_pd256(a), b, 1);
    }
    double* out_lo = reinterpret_cast<double*>(psi + base);
    double* out_hi = reinterpret_cast<double*>(psi + base + dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const Cx* row = m + k * dim;
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t j = 0; j < dim; ++j) {
        acc = cmul_acc(acc, row[j].real(), row[j].imag(), fiber[j]);
      }
      _mm_storeu_pd(out_lo + 2 * k, _mm256_castpd256_pd128(acc));
      _mm_storeu_pd(out_hi + 2 * k, _mm256_extractf128_pd(acc, 1));
    }
  }
  if (base < n_amps) {
    apply_site_matrix_scalar(psi + base, n_amps - base, m, dim, 1);
  }
}

}  // namespace

void apply_site_matrix_avx2(Cx* psi, std::size_t n_amps, const Cx* m,
                            std::size_t dim, std::size_t stride) {
  if (dim > kMaxSimdDim) {
    apply_site_matrix_scalar(psi, n_amps, m, dim, stride);
    return;
  }
  if (stride >= 2) {
    apply_strided(psi, n_amps, m, dim, stride);
  } else {
    apply_contiguous(psi, n_amps, m, dim);
  }
}

double norm_sq_avx2(const Cx* v, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(v);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(p + 2 * i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  double out = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < n; ++i) {
    out += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  }
  return out;
}

Cx inner_product_avx2(const Cx* a, const Cx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  // racc lanes [ar*br, ai*bi, ...]: real part = sum of all lanes.
  // iacc lanes [ar*bi, ai*br, ...]: imag part = even lanes - odd lanes.
  __m256d racc = _mm256_setzero_pd();
  __m256d iacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * i);
    const __m256d y = _mm256_loadu_pd(pb + 2 * i);
    racc = _mm256_fmadd_pd(x, y, racc);
    iacc = _mm256_fmadd_pd(x, _mm256_permute_pd(y, 0x5), iacc);
  }
  alignas(32) double r[4];
  alignas(32) double q[4];
  _mm256_store_pd(r, racc);
  _mm256_store_pd(q, iacc);
  double re = (r[0] + r[2]) + (r[1] + r[3]);
  double im = (q[0] + q[2]) - (q[1] + q[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void matvec_avx2(const Cx* m, const Cx* x, Cx* y, std::size_t rows,
                 std::size_t cols) {
  const double* px = reinterpret_cast<const double*>(x);
  for (std::size_t rr = 0; rr < rows; ++rr) {
    const Cx* row = m + rr * cols;
    const double* pr = reinterpret_cast<const double*>(row);
    // pacc lanes [mr*xr, mi*xi, ...]: real part = even lanes - odd lanes.
    // qacc lanes [mr*xi, mi*xr, ...]: imag part = sum of all lanes.
    __m256d pacc = _mm256_setzero_pd();
    __m256d qacc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      const __m256d mv = _mm256_loadu_pd(pr + 2 * c);
      const __m256d xv = _mm256_loadu_pd(px + 2 * c);
      pacc = _mm256_fmadd_pd(mv, xv, pacc);
      qacc = _mm256_fmadd_pd(mv, _mm256_permute_pd(xv, 0x5), qacc);
    }
    alignas(32) double p[4];
    alignas(32) double q[4];
    _mm256_store_pd(p, pacc);
    _mm256_store_pd(q, qacc);
    double re = (p[0] + p[2]) - (p[1] + p[3]);
    double im = (q[0] + q[2]) + (q[1] + q[3]);
    for (; c < cols; ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[rr] = Cx(re, im);
  }
}

}  // namespace quditbp::kernels
