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
 * @file gradient.hpp
 * Exact partial derivatives of the cost with respect to one rotation angle,
 * plus a central finite-difference oracle.
 */
#pragma once

#include "quditbp/circuit.hpp"

namespace quditbp {

/// Addresses the rotation on qudit q of layer p; both indices 1-based.
struct ParamIndex {
  int qudit = 1;
  int layer = 1;
};

/// The index used by the variance experiments: first qudit, first layer.
ParamIndex first_parameter_index();

/**
 * Exact derivative dC/dtheta_k via tangent-state propagation: the state is
 * evolved up to and through the differentiated rotation R = exp(-i a S/2), a
 * tangent copy is hit with -i/2 S (which commutes with R), both vectors are
 * pushed through the remainder of the circuit, and the derivative is
 * 2 Re <psi_out| O |tangent_out>. Algebraically this equals differentiating
 * C = <0|U^dag O U|0> directly; the finite-difference oracle cross-checks it.
 *
 * Throws std::out_of_range for k outside the circuit.
 */
double partial_derivative(const Circuit& circuit, const Observable& observable,
                          ParamIndex k);

/// Central difference (C(a+step) - C(a-step)) / (2 step) on parameter k.
/// Throws std::invalid_argument for step <= 0.
double finite_difference(const Circuit& circuit, const Observable& observable,
                         ParamIndex k, double step = 1e-5);

}  // namespace quditbp
