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
 * @file gates.hpp
 * Generalized Gell-Mann generators of su(d'), their rotation gates
 * exp(-i theta S / 2), and the qudit CNOT.
 *
 * Generator indices follow the conventional 1-based labeling of the
 * Gell-Mann family (kets |1>..|d'>); ket |m> addresses amplitude m-1. At
 * d' = 2 the family reduces to the Pauli matrices under this mapping.
 */
#pragma once

#include <cstdint>

#include "quditbp/linalg.hpp"
#include "quditbp/rng.hpp"

namespace quditbp {

enum class Axis : std::uint8_t { X, Y, Z };

const char* axis_name(Axis axis);

/**
 * One generator of su(d'):
 *   X: S = |j><k| + |k><j|            for 1 <= j < k <= d'
 *   Y: S = -i|j><k| + i|k><j|         for 1 <= j < k <= d'
 *   Z: S = sqrt(2/(j(j+1))) * (sum_{m=1..j} |m><m|  -  j |j+1><j+1|)
 *                                      for 1 <= j <= d'-1 (k unused, = 0)
 * Every generator is Hermitian with Tr[S] = 0 and Tr[S^2] = 2.
 */
struct GellMannGenerator {
  Axis axis = Axis::X;
  int j = 1;
  /// Second index for X/Y; must be 0 (absent) for Z.
  int k = 2;
  int qudit_dim = 2;
};

/// Throws std::invalid_argument if the index invariants are violated.
void validate_generator(const GellMannGenerator& gen);

/// Dense d' x d' matrix of the generator. Validates first.
ComplexMatrix gell_mann_matrix(const GellMannGenerator& gen);

/// Rotation gate R = exp(-i angle S / 2) about one generator.
struct RotationGate {
  GellMannGenerator generator;
  double angle = 0.0;
};

/**
 * Closed-form d' x d' unitary of the rotation.
 * X/Y: R = I + (cos(a/2) - 1)(|j><j| + |k><k|) - i sin(a/2) S, exact because
 *      S^2 is the projector onto span{|j>, |k>}.
 * Z:   S is diagonal, so R is the entry-wise exponential of the diagonal.
 */
ComplexMatrix rotation_matrix(const RotationGate& gate);

/**
 * Draws axis uniformly from {X, Y, Z}; then (j, k) uniformly over the
 * d'(d'-1)/2 pairs with j < k for X/Y, or j uniformly over 1..d'-1 for Z.
 * Draw order is fixed (axis, then index) so sequences are reproducible.
 */
GellMannGenerator random_generator(Rng& rng, int qudit_dim);

/**
 * Two-qudit gate |x>|y> -> |x>|x + y mod d'> (control first). Applications
 * to statevectors use the amplitude permutation in state.hpp; the dense
 * matrix here exists for oracles and tests.
 */
struct QuditCnot {
  int qudit_dim = 2;

  /// Dense d'^2 x d'^2 permutation matrix, control = most significant digit.
  ComplexMatrix matrix() const;
};

}  // namespace quditbp
