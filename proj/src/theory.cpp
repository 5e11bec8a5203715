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

#include "quditbp/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace quditbp {

namespace {

using Int128 = __int128;

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow128(Int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("reduced fraction term exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

Fraction make_fraction(Int128 num, Int128 den) {
  if (den == 0) {
    throw std::invalid_argument("fraction denominator is zero");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 g = gcd128(num, den);
  if (g == 0) g = 1;
  Fraction f;
  f.num = narrow128(num / g);
  f.den = narrow128(den / g);
  return f;
}

/// d'^n in unsigned 64-bit, throwing on overflow.
std::uint64_t checked_power(int qudit_dim, int n) {
  std::uint64_t d = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(qudit_dim);
  for (int s = 0; s < n; ++s) {
    if (d > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("register dimension overflows 64 bits");
    }
    d *= base;
  }
  return d;
}

void check_dims(int n, int qudit_dim) {
  if (n < 1 || qudit_dim < 2) {
    throw std::domain_error(
        "variance predictions need n >= 1 and d' >= 2, got n=" +
        std::to_string(n) + " d'=" + std::to_string(qudit_dim));
  }
}

}  // namespace

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  *this = make_fraction(n, d);
}

double Fraction::value() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return make_fraction(static_cast<Int128>(a.num) * b.num,
                       static_cast<Int128>(a.den) * b.den);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return make_fraction(
      static_cast<Int128>(a.num) * b.den - static_cast<Int128>(b.num) * a.den,
      static_cast<Int128>(a.den) * b.den);
}

VariancePrediction theorem_variance(const Observable& observable, int n,
                                    int qudit_dim) {
  check_dims(n, qudit_dim);
  const std::uint64_t d_int = checked_power(qudit_dim, n);
  if (observable.dim() != d_int) {
    throw std::invalid_argument(
        "observable dimension " + std::to_string(observable.dim()) +
        " does not match d'^n = " + std::to_string(d_int));
  }
  const double d = static_cast<double>(d_int);
  const double d2m1 = d * d - 1.0;
  const double prefactor =
      static_cast<double>(checked_power(qudit_dim, n - 1)) / (d + 1.0);
  const double tr = observable.trace();
  const double tr_sq = observable.trace_sq();
  VariancePrediction p;
  p.variance = prefactor * (tr_sq / d2m1 - tr * tr / (d * d2m1));
  p.n = n;
  p.qudit_dim = qudit_dim;
  p.register_dim = d_int;
  p.observable_trace = tr;
  p.observable_trace_sq = tr_sq;
  return p;
}

double corollary_variance(int n, int qudit_dim) {
  check_dims(n, qudit_dim);
  const double d = std::pow(static_cast<double>(qudit_dim), n);
  const double dp1 = d + 1.0;
  return 1.0 / (static_cast<double>(qudit_dim) * dp1 * dp1);
}

Fraction theorem_variance_zero_projector_exact(int n, int qudit_dim) {
  check_dims(n, qudit_dim);
  // Tr[O] = Tr[O^2] = 1 for the rank-1 projector, so
  //   Var = d'^(n-1)/(d+1) * (1/(d^2-1) - 1/(d(d^2-1)))
  // assembled literally, term by term, before reduction.
  const Int128 d = static_cast<Int128>(checked_power(qudit_dim, n));
  const Int128 prefactor_num =
      static_cast<Int128>(checked_power(qudit_dim, n - 1));
  const Int128 d2m1 = d * d - 1;
  const Fraction prefactor = make_fraction(prefactor_num, d + 1);
  const Fraction bracket =
      make_fraction(1, d2m1) - make_fraction(1, d * d2m1);
  return prefactor * bracket;
}

Fraction corollary_variance_exact(int n, int qudit_dim) {
  check_dims(n, qudit_dim);
  const Int128 dp1 = static_cast<Int128>(checked_power(qudit_dim, n)) + 1;
  return make_fraction(1, static_cast<Int128>(qudit_dim) * dp1 * dp1);
}

double chebyshev_bound(double variance, double delta) {
  if (delta <= 0.0) {
    throw std::domain_error("chebyshev_bound needs delta > 0");
  }
  if (variance < 0.0) {
    throw std::domain_error("chebyshev_bound needs variance >= 0");
  }
  return std::min(1.0, variance / (delta * delta));
}

std::vector<std::pair<int, double>> amplification_curve(
    int n, const std::vector<int>& qudit_dims) {
  if (qudit_dims.empty()) {
    throw std::invalid_argument("amplification_curve needs a nonempty range");
  }
  std::vector<std::pair<int, double>> curve;
  curve.reserve(qudit_dims.size());
  for (const int dp : qudit_dims) {
    curve.emplace_back(dp, corollary_variance(n, dp));
  }
  return curve;
}

}  // namespace quditbp
