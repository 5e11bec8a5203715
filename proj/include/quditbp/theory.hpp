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
 * @file theory.hpp
 * Closed-form predictions for the ensemble variance of one cost-function
 * partial derivative, assuming the unitaries on both sides of the
 * differentiated gate form (approximate) 2-designs:
 *
 *   Var[dC] = d'^(n-1)/(d+1) * ( Tr[O^2]/(d^2-1) - Tr[O]^2/(d(d^2-1)) ),
 *   d = d'^n,
 *
 * which for the rank-1 register projector O = |0...0><0...0| reduces to
 *
 *   Var[dC] = 1 / (d' (d'^n + 1)^2).
 *
 * The reduction is verified in exact rational arithmetic. A Chebyshev bound
 * and the variance-vs-d' tabulation used by the sweep reports live here too.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quditbp/circuit.hpp"

namespace quditbp {

/**
 * Exact rational with reduced int64 numerator/denominator; intermediates use
 * 128-bit arithmetic. Construction and multiplication throw
 * std::overflow_error if a reduced value leaves the int64 range.
 */
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);

  double value() const;

  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) = default;
};

/// One evaluated variance prediction with its ingredients.
struct VariancePrediction {
  double variance = 0.0;
  int n = 0;
  int qudit_dim = 0;
  std::uint64_t register_dim = 0;
  double observable_trace = 0.0;
  double observable_trace_sq = 0.0;
};

/**
 * General-observable prediction. Throws std::domain_error for n < 1 or
 * d' < 2 (the d = 1 coefficients are singular), std::invalid_argument if the
 * observable is not d'^n dimensional.
 */
VariancePrediction theorem_variance(const Observable& observable, int n,
                                    int qudit_dim);

/// Projector specialization 1/(d'(d'^n+1)^2) in floating point.
double corollary_variance(int n, int qudit_dim);

/// The same two quantities in exact rational arithmetic (n and d' small
/// enough that d'^n fits; throws std::overflow_error otherwise).
Fraction theorem_variance_zero_projector_exact(int n, int qudit_dim);
Fraction corollary_variance_exact(int n, int qudit_dim);

/// Pr(|X - E X| >= delta) <= min(1, variance / delta^2).
/// Throws std::domain_error for delta <= 0 or variance < 0.
double chebyshev_bound(double variance, double delta);

/// Projector-variance tabulation over a d' range (the reference curve the
/// sweeps overlay). Throws std::invalid_argument on an empty range.
std::vector<std::pair<int, double>> amplification_curve(
    int n, const std::vector<int>& qudit_dims);

}  // namespace quditbp
