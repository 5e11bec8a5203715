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
 * @file circuit.hpp
 * Layered variational circuits: per-layer single-qudit rotations plus a
 * fixed CNOT entangler pattern, the four named templates A-D, state
 * evolution, Hermitian observables, and the cost C = <psi|O|psi> for the
 * register prepared in |0...0>.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quditbp/gates.hpp"
#include "quditbp/linalg.hpp"
#include "quditbp/rng.hpp"
#include "quditbp/state.hpp"

namespace quditbp {

enum class Entangler : std::uint8_t { Linear, AllToAll };
enum class Ordering : std::uint8_t { RotationsFirst, EntanglerFirst };

/**
 * One of the four named circuit layouts. The label <-> layout mapping is a
 * configuration table (ansatz_template) rather than scattered branches, so a
 * different assignment is a one-table change:
 *   A = (Linear,   RotationsFirst)   B = (Linear,   EntanglerFirst)
 *   C = (AllToAll, RotationsFirst)   D = (AllToAll, EntanglerFirst)
 * Linear entangles (m, m+1) for m = 0..n-2 ascending; AllToAll entangles
 * every ordered pair (a, b), a < b, in lexicographic order.
 */
struct AnsatzTemplate {
  Entangler entangler = Entangler::Linear;
  Ordering ordering = Ordering::RotationsFirst;
  char label = 'A';
};

/// Throws std::invalid_argument for labels outside {A, B, C, D}.
AnsatzTemplate ansatz_template(char label);

/// One layer: exactly n rotation gates, gate s acting on site s.
struct Layer {
  std::vector<RotationGate> rotations;
};

struct Circuit {
  AnsatzTemplate ansatz;
  int n = 1;
  int qudit_dim = 2;
  std::vector<Layer> layers;
  /// Seed the circuit was drawn from, when it was drawn randomly.
  std::optional<std::uint64_t> build_seed;

  int depth() const { return static_cast<int>(layers.size()); }
  int parameter_count() const { return n * depth(); }
};

/**
 * Draws n*L generator/angle pairs from rng: for each layer, for each site,
 * one random_generator draw followed by one angle uniform on [0, 2pi).
 * Throws dimension_cap_error if d'^n exceeds the register cap.
 */
Circuit build_random_circuit(const AnsatzTemplate& ansatz, int n,
                             int qudit_dim, int layer_count, Rng& rng);

/// JSON description (label, n, d', L, seed, per-gate axis/j/k/theta).
std::string circuit_to_json(const Circuit& circuit);

/// Applies the CNOT pattern of the template for this register size.
void apply_entangler(PureState& state, const AnsatzTemplate& ansatz);

/**
 * Applies one layer in the template's ordering (rotations ascending by
 * site). Throws std::invalid_argument on shape mismatch.
 */
void apply_layer(PureState& state, const Layer& layer,
                 const AnsatzTemplate& ansatz);

/// Applies layers 1..L in order. Norm is re-checked on exit (1e-10).
PureState evolve(const Circuit& circuit, PureState state);

/**
 * Hermitian observable, stored either densely or as a rank-1 basis
 * projector |index><index| (the experiment default; apply() is O(d) there).
 */
class Observable {
 public:
  /// Validates Hermiticity within 1e-10; throws std::invalid_argument.
  static Observable from_matrix(const ComplexMatrix& m);
  static Observable basis_projector(std::size_t index, std::size_t dim);
  /// |0...0><0...0| on the full register.
  static Observable global_zero_projector(int n, int qudit_dim);
  static Observable identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double trace() const { return trace_; }
  double trace_sq() const { return trace_sq_; }

  /// out = O * in (length dim).
  void apply(const Cx* in, Cx* out) const;

  /// <a|O|b> for equal-length vectors of size dim.
  Cx matrix_element(const ComplexVector& a, const ComplexVector& b) const;

 private:
  Observable() = default;

  std::size_t dim_ = 0;
  double trace_ = 0.0;
  double trace_sq_ = 0.0;
  /// Projector fast path when set; dense matrix otherwise.
  std::optional<std::size_t> projector_index_;
  ComplexMatrix matrix_;
};

/**
 * C = <psi(theta)|O|psi(theta)> for |psi(theta)> = U(theta)|0...0>.
 * The imaginary part of the expectation must vanish within 1e-10
 * (Hermiticity); a violation throws std::runtime_error.
 */
double cost(const Circuit& circuit, const Observable& observable);

}  // namespace quditbp
