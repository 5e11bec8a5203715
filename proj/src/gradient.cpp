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

#include "quditbp/gradient.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quditbp {

ParamIndex first_parameter_index() { return {1, 1}; }

namespace {

void check_param_index(const Circuit& circuit, ParamIndex k) {
  if (k.qudit < 1 || k.qudit > circuit.n) {
    throw std::out_of_range("parameter qudit index " +
                            std::to_string(k.qudit) + " outside 1.." +
                            std::to_string(circuit.n));
  }
  if (k.layer < 1 || k.layer > circuit.depth()) {
    throw std::out_of_range("parameter layer index " +
                            std::to_string(k.layer) + " outside 1.." +
                            std::to_string(circuit.depth()));
  }
}

void apply_one_rotation(PureState& state, const Layer& layer, int site) {
  apply_single_qudit_gate(
      state, site,
      rotation_matrix(layer.rotations[static_cast<std::size_t>(site)]));
}

}  // namespace

double partial_derivative(const Circuit& circuit, const Observable& observable,
                          ParamIndex k) {
  check_param_index(circuit, k);
  const int site = k.qudit - 1;
  const std::size_t p = static_cast<std::size_t>(k.layer - 1);
  const AnsatzTemplate& ansatz = circuit.ansatz;

  PureState psi = initial_state(circuit.n, circuit.qudit_dim);
  if (observable.dim() != psi.amplitudes.size()) {
    throw std::invalid_argument("observable dimension mismatch");
  }
  for (std::size_t l = 0; l < p; ++l) {
    apply_layer(psi, circuit.layers[l], ansatz);
  }

  // Layer p up to and including the differentiated rotation.
  const Layer& layer = circuit.layers[p];
  if (ansatz.ordering == Ordering::EntanglerFirst) {
    apply_entangler(psi, ansatz);
  }
  for (int s = 0; s <= site; ++s) {
    apply_one_rotation(psi, layer, s);
  }

  // Tangent: -i/2 times the generator, inserted next to its rotation (the
  // two commute, acting on the same site).
  PureState tangent = psi;
  const ComplexMatrix s_matrix = gell_mann_matrix(
      layer.rotations[static_cast<std::size_t>(site)].generator);
  apply_single_qudit_gate(tangent, site, scale(Cx(0.0, -0.5), s_matrix));

  // Remainder of layer p and all later layers, applied to both vectors.
  for (int s = site + 1; s < circuit.n; ++s) {
    apply_one_rotation(psi, layer, s);
    apply_one_rotation(tangent, layer, s);
  }
  if (ansatz.ordering == Ordering::RotationsFirst) {
    apply_entangler(psi, ansatz);
    apply_entangler(tangent, ansatz);
  }
  for (std::size_t l = p + 1; l < circuit.layers.size(); ++l) {
    apply_layer(psi, circuit.layers[l], ansatz);
    apply_layer(tangent, circuit.layers[l], ansatz);
  }

  return 2.0 *
         observable.matrix_element(psi.amplitudes, tangent.amplitudes).real();
}

double finite_difference(const Circuit& circuit, const Observable& observable,
                         ParamIndex k, double step) {
  check_param_index(circuit, k);
  if (step <= 0.0) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  Circuit shifted = circuit;
  RotationGate& gate =
      shifted.layers[static_cast<std::size_t>(k.layer - 1)]
          .rotations[static_cast<std::size_t>(k.qudit - 1)];
  const double original = gate.angle;
  gate.angle = original + step;
  const double plus = cost(shifted, observable);
  gate.angle = original - step;
  const double minus = cost(shifted, observable);
  return (plus - minus) / (2.0 * step);
}

}  // namespace quditbp
