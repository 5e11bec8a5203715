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
 * @file state.hpp
 * Pure states of an n-qudit register and in-place single/two-qudit gate
 * application on the statevector.
 *
 * Digit convention: site 0 is the most significant digit, so the amplitude
 * index of basis state |x_0 x_1 ... x_{n-1}> is sum_s x_s * d'^(n-1-s), and
 * site s has stride d'^(n-1-s).
 */
#pragma once

#include <cstddef>

#include "quditbp/linalg.hpp"

namespace quditbp {

/// Register dimension d = d'^n, checked against the dimension cap.
std::size_t register_dimension(int n, int qudit_dim);

/**
 * Statevector of n qudits of dimension d'. Proper states keep unit norm
 * within 1e-10; the struct itself does not enforce the invariant because
 * gradient tangent vectors reuse the layout with norm < 1.
 */
struct PureState {
  int n = 1;
  int qudit_dim = 2;
  ComplexVector amplitudes;
};

/// |0...0>: amplitude 1 at index 0.
PureState initial_state(int n, int qudit_dim);

/// Stride of `site` (0-based, < n). Throws std::out_of_range otherwise.
std::size_t site_stride(const PureState& state, int site);

double state_norm(const PureState& state);

/// <a|b> with conjugation on a. Throws std::invalid_argument on shape
/// mismatch.
Cx state_inner_product(const PureState& a, const PureState& b);

/**
 * In-place application of a d' x d' matrix to one site. The matrix need not
 * be unitary (gradient tangents apply -i/2 times a generator).
 * Throws std::invalid_argument on shape mismatch, std::out_of_range on a bad
 * site.
 */
void apply_single_qudit_gate(PureState& state, int site,
                             const ComplexMatrix& m);

/**
 * In-place CNOT: basis digit t at `target` becomes (t + c) mod d' where c is
 * the digit at `control`. Pure amplitude permutation; no matrix is built.
 * Throws std::invalid_argument if control == target, std::out_of_range for
 * bad sites.
 */
void cnot_apply(PureState& state, int control, int target);

}  // namespace quditbp
