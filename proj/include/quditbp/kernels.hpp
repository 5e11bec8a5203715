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

/**
 * @file kernels.hpp
 * Statevector inner-loop kernels. Scalar reference implementations are always
 * built; an AVX2 variant of each kernel lives in its own translation unit
 * (compiled with -mavx2 -mfma) and is selected at runtime when the CPU
 * supports it. The two variants are equivalence-tested against each other.
 *
 * Backend selection: QUDITBP_KERNEL=scalar|avx2 in the environment overrides
 * auto-detection; set_backend() overrides both.
 */
#pragma once

#include <complex>
#include <cstddef>

namespace quditbp::kernels {

using Cx = std::complex<double>;

enum class Backend { scalar, avx2 };

bool backend_supported(Backend b);
Backend active_backend();
/// Throws std::invalid_argument if the backend is not supported on this CPU.
void set_backend(Backend b);
const char* backend_name(Backend b);

/**
 * In-place application of a dim x dim matrix to every length-dim fiber of a
 * statevector:
 *
 *   psi[base + k*stride + i] <- sum_j m[k*dim + j] * psi[base + j*stride + i]
 *
 * for every base that is a multiple of dim*stride and every i < stride.
 * n_amps must be a multiple of dim*stride. m is row-major dim x dim.
 */
void apply_site_matrix(Cx* psi, std::size_t n_amps, const Cx* m,
                       std::size_t dim, std::size_t stride);

/// sum_i |v_i|^2
double norm_sq(const Cx* v, std::size_t n);

/// sum_i conj(a_i) * b_i
Cx inner_product(const Cx* a, const Cx* b, std::size_t n);

/// y = M x for row-major rows x cols M (no conjugation).
void matvec(const Cx* m, const Cx* x, Cx* y, std::size_t rows,
            std::size_t cols);

// Reference kernels; the dispatchers above reduce to these on the scalar
// backend and the equivalence tests call them directly.
void apply_site_matrix_scalar(Cx* psi, std::size_t n_amps, const Cx* m,
                              std::size_t dim, std::size_t stride);
double norm_sq_scalar(const Cx* v, std::size_t n);
Cx inner_product_scalar(const Cx* a, const Cx* b, std::size_t n);
void matvec_scalar(const Cx* m, const Cx* x, Cx* y, std::size_t rows,
                   std::size_t cols);

// AVX2 kernels; callable only when backend_supported(Backend::avx2).
void apply_site_matrix_avx2(Cx* psi, std::size_t n_amps, const Cx* m,
                            std::size_t dim, std::size_t stride);
double norm_sq_avx2(const Cx* v, std::size_t n);
Cx inner_product_avx2(const Cx* a, const Cx* b, std::size_t n);
void matvec_avx2(const Cx* m, const Cx* x, Cx* y, std::size_t rows,
                 std::size_t cols);

}  // namespace quditbp::kernels
