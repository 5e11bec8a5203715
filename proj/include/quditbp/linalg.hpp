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
 * @file linalg.hpp
 * Dense complex linear algebra used by the simulator: a row-major matrix
 * type, Kronecker products, traces, adjoints and rank-1 projectors.
 *
 * All operations are pure and all values immutable after construction, so
 * they may be shared freely across threads. Summation order is fixed
 * (row-major accumulation) so results are bit-reproducible run to run.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace quditbp {

using Cx = std::complex<double>;

/// Statevector storage. Length is always >= 1 where one is in use.
using ComplexVector = std::vector<Cx>;

/// Thrown when an operation would allocate more amplitudes/entries than the
/// configured cap allows.
class dimension_cap_error : public std::runtime_error {
 public:
  explicit dimension_cap_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Maximum number of entries a register or matrix result may hold.
/// Defaults to 10^7; the environment variable QUDITBP_DIM_CAP overrides the
/// default at process start, set_dimension_cap overrides it at runtime.
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

/// Dense row-major complex matrix (double precision).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  /// Zero-filled rows x cols matrix. Throws dimension_cap_error if the entry
  /// count exceeds the configured cap.
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Cx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Cx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Cx* data() { return data_.data(); }
  const Cx* data() const { return data_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cx> data_;
};

/// Standard matrix product. Throws std::invalid_argument on shape mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; result dims multiply. Throws dimension_cap_error when
/// the result would exceed the configured entry cap (checked before any
/// allocation happens).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of diagonal entries. Throws std::invalid_argument if not square.
Cx trace(const ComplexMatrix& a);

/// Tr[A B] accumulated directly from entries; avoids forming the product.
Cx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Rank-1 projector |index><index| of size dim x dim.
/// Throws std::out_of_range if index >= dim.
ComplexMatrix basis_projector(std::size_t index, std::size_t dim);

/// Element-wise comparison with absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = 1e-12);

ComplexMatrix scale(Cx factor, const ComplexMatrix& a);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace quditbp
