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

#include "quditbp/haar.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "quditbp/gradient.hpp"

namespace quditbp {

namespace {

void check_square_same(const ComplexMatrix& m, std::size_t d,
                       const char* name) {
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument(std::string("matrix ") + name +
                                " is not square of the shared dimension");
  }
}

/// Accumulates complex samples; mean and standard error in fixed add order.
class MomentAccumulator {
 public:
  void add(Cx z) {
    sum_ += z;
    sum_abs_sq_ += std::norm(z);
    ++count_;
  }

  HaarMoment finish(Cx closed_form) const {
    HaarMoment m;
    m.samples = count_;
    m.closed_form = closed_form;
    if (count_ == 0) return m;
    const double n = static_cast<double>(count_);
    m.estimate = sum_ / n;
    if (count_ > 1) {
      // sum |z - mean|^2 = sum |z|^2 - n |mean|^2, clamped against rounding
      // for (near-)constant samples.
      const double centered =
          std::max(0.0, sum_abs_sq_ - n * std::norm(m.estimate));
      m.standard_error = std::sqrt(centered / (n - 1.0) / n);
    }
    return m;
  }

 private:
  Cx sum_{0.0, 0.0};
  double sum_abs_sq_ = 0.0;
  std::size_t count_ = 0;
};

/// W A W^dag for square matrices.
ComplexMatrix conjugate_by(const ComplexMatrix& w, const ComplexMatrix& a) {
  return matmul(matmul(w, a), adjoint(w));
}

}  // namespace

ComplexMatrix sample_haar_unitary(int d, Rng& rng) {
  if (d < 1) {
    throw std::invalid_argument("sample_haar_unitary needs d >= 1");
  }
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd ginibre(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      ginibre(r, c) = rng.normal_complex();
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::complex<double> diag = r(c, c);
    const double mag = std::abs(diag);
    const std::complex<double> phase =
        mag > 0.0 ? diag / mag : std::complex<double>(1.0, 0.0);
    q.col(c) *= phase;
  }
  ComplexMatrix out(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (Eigen::Index rr = 0; rr < n; ++rr) {
    for (Eigen::Index cc = 0; cc < n; ++cc) {
      out(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)) =
          q(rr, cc);
    }
  }
  return out;
}

Cx lemma1_closed_form(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t d = a.rows();
  check_square_same(a, d, "A");
  check_square_same(b, d, "B");
  return trace(a) * trace(b) / static_cast<double>(d);
}

namespace {

struct SecondMomentTraces {
  Cx ta, tb, tc, td;  // individual traces
  Cx tac, tbd;        // Tr[AC], Tr[BD]
  double d;

  SecondMomentTraces(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& dd) {
    const std::size_t dim = a.rows();
    check_square_same(a, dim, "A");
    check_square_same(b, dim, "B");
    check_square_same(c, dim, "C");
    check_square_same(dd, dim, "D");
    if (dim < 2) {
      throw std::domain_error(
          "second-moment closed forms are singular at d = 1");
    }
    ta = trace(a);
    tb = trace(b);
    tc = trace(c);
    td = trace(dd);
    tac = trace_of_product(a, c);
    tbd = trace_of_product(b, dd);
    d = static_cast<double>(dim);
  }
};

}  // namespace

Cx lemma2_closed_form(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ComplexMatrix& c, const ComplexMatrix& dd) {
  const SecondMomentTraces t(a, b, c, dd);
  const double d2m1 = t.d * t.d - 1.0;
  return (t.ta * t.tb * t.tc * t.td + t.tac * t.tbd) / d2m1 -
         (t.tac * t.tb * t.td + t.ta * t.tc * t.tbd) / (t.d * d2m1);
}

Cx lemma3_closed_form(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ComplexMatrix& c, const ComplexMatrix& dd) {
  const SecondMomentTraces t(a, b, c, dd);
  const double d2m1 = t.d * t.d - 1.0;
  return (t.ta * t.tc * t.tbd + t.tac * t.tb * t.td) / d2m1 -
         (t.tac * t.tbd + t.ta * t.tb * t.tc * t.td) / (t.d * d2m1);
}

HaarMoment mc_lemma1(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t samples, Rng& rng) {
  const Cx closed = lemma1_closed_form(a, b);
  const int d = static_cast<int>(a.rows());
  MomentAccumulator acc;
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexMatrix w = sample_haar_unitary(d, rng);
    acc.add(trace_of_product(conjugate_by(w, a), b));
  }
  return acc.finish(closed);
}

HaarMoment mc_lemma2(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& dd,
                     std::size_t samples, Rng& rng) {
  const Cx closed = lemma2_closed_form(a, b, c, dd);
  const int d = static_cast<int>(a.rows());
  MomentAccumulator acc;
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexMatrix w = sample_haar_unitary(d, rng);
    const Cx first = trace_of_product(conjugate_by(w, a), b);
    const Cx second = trace_of_product(conjugate_by(w, c), dd);
    acc.add(first * second);
  }
  return acc.finish(closed);
}

HaarMoment mc_lemma3(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& dd,
                     std::size_t samples, Rng& rng) {
  const Cx closed = lemma3_closed_form(a, b, c, dd);
  const int d = static_cast<int>(a.rows());
  MomentAccumulator acc;
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexMatrix w = sample_haar_unitary(d, rng);
    // Tr[(WAW')B (WCW')D] with both conjugations sharing one W draw.
    const ComplexMatrix left = matmul(conjugate_by(w, a), b);
    const ComplexMatrix right = matmul(conjugate_by(w, c), dd);
    acc.add(trace_of_product(left, right));
  }
  return acc.finish(closed);
}

HaarMoment mc_mean_gradient(const AnsatzTemplate& ansatz, int n, int qudit_dim,
                            int layer_count, std::size_t samples,
                            std::uint64_t seed) {
  return mc_mean_gradient(ansatz, n, qudit_dim, layer_count, samples, seed,
                          Observable::global_zero_projector(n, qudit_dim));
}

HaarMoment mc_mean_gradient(const AnsatzTemplate& ansatz, int n, int qudit_dim,
                            int layer_count, std::size_t samples,
                            std::uint64_t seed,
                            const Observable& observable) {
  MomentAccumulator acc;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const Circuit circuit =
        build_random_circuit(ansatz, n, qudit_dim, layer_count, rng);
    acc.add(Cx(
        partial_derivative(circuit, observable, first_parameter_index()),
        0.0));
  }
  return acc.finish(Cx(0.0, 0.0));
}

}  // namespace quditbp
