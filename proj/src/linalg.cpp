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

#include "quditbp/linalg.hpp"

#include <atomic>
#include <cstdlib>

namespace quditbp {

namespace {

constexpr std::size_t kDefaultDimensionCap = 10000000;

std::size_t initial_cap() {
  if (const char* env = std::getenv("QUDITBP_DIM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return kDefaultDimensionCap;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{initial_cap()};
  return cap;
}

}  // namespace

std::size_t dimension_cap() { return cap_storage().load(); }

void set_dimension_cap(std::size_t cap) {
  if (cap == 0) {
    throw std::invalid_argument("dimension cap must be positive");
  }
  cap_storage().store(cap);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  const std::size_t cap = dimension_cap();
  if (rows != 0 && cols > cap / rows) {
    throw dimension_cap_error("matrix of " + std::to_string(rows) + "x" +
                              std::to_string(cols) +
                              " entries exceeds the dimension cap " +
                              std::to_string(cap));
  }
  data_.assign(rows * cols, Cx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = Cx(1.0, 0.0);
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul shape mismatch");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Cx aik = a(i, k);
      if (aik == Cx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  const std::size_t cap = dimension_cap();
  // Overflow-safe cap check before any allocation.
  if (a.rows() != 0 && b.rows() > cap / a.rows()) {
    throw dimension_cap_error("kron result exceeds the dimension cap");
  }
  if (rows != 0 && cols > cap / rows) {
    throw dimension_cap_error("kron result exceeds the dimension cap");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Cx aij = a(i, j);
      if (aij == Cx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Cx trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("trace requires a square matrix");
  }
  Cx sum(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

Cx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_of_product shape mismatch");
  }
  Cx sum(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      sum += a(i, j) * b(j, i);
    }
  }
  return sum;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = std::conj(a(i, j));
    }
  }
  return out;
}

ComplexMatrix basis_projector(std::size_t index, std::size_t dim) {
  if (index >= dim) {
    throw std::out_of_range("basis_projector index out of range");
  }
  ComplexMatrix out(dim, dim);
  out(index, index) = Cx(1.0, 0.0);
  return out;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix scale(Cx factor, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = factor * a(i, j);
    }
  }
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("add shape mismatch");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) + b(i, j);
    }
  }
  return out;
}

}  // namespace quditbp
