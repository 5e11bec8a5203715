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

#include "quditbp/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "quditbp/kernels.hpp"

namespace quditbp {

AnsatzTemplate ansatz_template(char label) {
  switch (label) {
    case 'A':
      return {Entangler::Linear, Ordering::RotationsFirst, 'A'};
    case 'B':
      return {Entangler::Linear, Ordering::EntanglerFirst, 'B'};
    case 'C':
      return {Entangler::AllToAll, Ordering::RotationsFirst, 'C'};
    case 'D':
      return {Entangler::AllToAll, Ordering::EntanglerFirst, 'D'};
    default:
      throw std::invalid_argument(std::string("unknown ansatz label: ") +
                                  label);
  }
}

Circuit build_random_circuit(const AnsatzTemplate& ansatz, int n,
                             int qudit_dim, int layer_count, Rng& rng) {
  if (layer_count < 0) {
    throw std::invalid_argument("layer_count must be >= 0");
  }
  register_dimension(n, qudit_dim);  // validates dims and the cap
  Circuit circuit;
  circuit.ansatz = ansatz;
  circuit.n = n;
  circuit.qudit_dim = qudit_dim;
  circuit.layers.resize(static_cast<std::size_t>(layer_count));
  for (auto& layer : circuit.layers) {
    layer.rotations.reserve(static_cast<std::size_t>(n));
    for (int site = 0; site < n; ++site) {
      RotationGate gate;
      gate.generator = random_generator(rng, qudit_dim);
      gate.angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      layer.rotations.push_back(gate);
    }
  }
  return circuit;
}

std::string circuit_to_json(const Circuit& circuit) {
  nlohmann::json j;
  j["template"] = std::string(1, circuit.ansatz.label);
  j["n"] = circuit.n;
  j["d_prime"] = circuit.qudit_dim;
  j["L"] = circuit.depth();
  if (circuit.build_seed) {
    j["seed"] = *circuit.build_seed;
  }
  nlohmann::json layers = nlohmann::json::array();
  for (const Layer& layer : circuit.layers) {
    nlohmann::json gates = nlohmann::json::array();
    for (const RotationGate& gate : layer.rotations) {
      nlohmann::json g;
      g["axis"] = axis_name(gate.generator.axis);
      g["j"] = gate.generator.j;
      if (gate.generator.axis != Axis::Z) {
        g["k"] = gate.generator.k;
      }
      g["theta"] = gate.angle;
      gates.push_back(std::move(g));
    }
    layers.push_back(std::move(gates));
  }
  j["layers"] = std::move(layers);
  return j.dump();
}

void apply_entangler(PureState& state, const AnsatzTemplate& ansatz) {
  const int n = state.n;
  if (ansatz.entangler == Entangler::Linear) {
    for (int m = 0; m + 1 < n; ++m) {
      cnot_apply(state, m, m + 1);
    }
    return;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      cnot_apply(state, a, b);
    }
  }
}

namespace {

void apply_rotations(PureState& state, const Layer& layer) {
  for (int site = 0; site < state.n; ++site) {
    const RotationGate& gate =
        layer.rotations[static_cast<std::size_t>(site)];
    apply_single_qudit_gate(state, site, rotation_matrix(gate));
  }
}

}  // namespace

void apply_layer(PureState& state, const Layer& layer,
                 const AnsatzTemplate& ansatz) {
  if (layer.rotations.size() != static_cast<std::size_t>(state.n)) {
    throw std::invalid_argument(
        "layer has " + std::to_string(layer.rotations.size()) +
        " rotations for an n=" + std::to_string(state.n) + " register");
  }
  if (ansatz.ordering == Ordering::EntanglerFirst) {
    apply_entangler(state, ansatz);
    apply_rotations(state, layer);
  } else {
    apply_rotations(state, layer);
    apply_entangler(state, ansatz);
  }
}

PureState evolve(const Circuit& circuit, PureState state) {
  if (state.n != circuit.n || state.qudit_dim != circuit.qudit_dim) {
    throw std::invalid_argument("circuit and state dimensions disagree");
  }
  for (const Layer& layer : circuit.layers) {
    apply_layer(state, layer, circuit.ansatz);
  }
  const double norm = state_norm(state);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::runtime_error("state norm drifted to " + std::to_string(norm));
  }
  return state;
}

Observable Observable::from_matrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("observable must be square and nonempty");
  }
  const std::size_t d = m.rows();
  double trace = 0.0;
  double trace_sq = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const Cx delta = m(r, c) - std::conj(m(c, r));
      if (std::abs(delta) > 1e-10) {
        throw std::invalid_argument("observable is not Hermitian");
      }
      // Tr[O^2] = sum_{r,c} O_rc O_cr = sum |O_rc|^2 for Hermitian O.
      trace_sq += std::norm(m(r, c));
    }
    trace += m(r, r).real();
  }
  Observable o;
  o.dim_ = d;
  o.trace_ = trace;
  o.trace_sq_ = trace_sq;
  o.matrix_ = m;
  return o;
}

Observable Observable::basis_projector(std::size_t index, std::size_t dim) {
  if (index >= dim) {
    throw std::out_of_range("projector index out of range");
  }
  Observable o;
  o.dim_ = dim;
  o.trace_ = 1.0;
  o.trace_sq_ = 1.0;
  o.projector_index_ = index;
  return o;
}

Observable Observable::global_zero_projector(int n, int qudit_dim) {
  return basis_projector(0, register_dimension(n, qudit_dim));
}

Observable Observable::identity(std::size_t dim) {
  return from_matrix(ComplexMatrix::identity(dim));
}

void Observable::apply(const Cx* in, Cx* out) const {
  if (projector_index_) {
    const std::size_t idx = *projector_index_;
    for (std::size_t i = 0; i < dim_; ++i) {
      out[i] = Cx(0.0, 0.0);
    }
    out[idx] = in[idx];
    return;
  }
  kernels::matvec(matrix_.data(), in, out, dim_, dim_);
}

Cx Observable::matrix_element(const ComplexVector& a,
                              const ComplexVector& b) const {
  if (a.size() != dim_ || b.size() != dim_) {
    throw std::invalid_argument("matrix_element shape mismatch");
  }
  if (projector_index_) {
    const std::size_t idx = *projector_index_;
    return std::conj(a[idx]) * b[idx];
  }
  ComplexVector scratch(dim_);
  apply(b.data(), scratch.data());
  return kernels::inner_product(a.data(), scratch.data(), dim_);
}

double cost(const Circuit& circuit, const Observable& observable) {
  PureState psi = evolve(circuit, initial_state(circuit.n, circuit.qudit_dim));
  if (observable.dim() != psi.amplitudes.size()) {
    throw std::invalid_argument("observable dimension mismatch");
  }
  const Cx value =
      observable.matrix_element(psi.amplitudes, psi.amplitudes);
  if (std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error("cost has non-vanishing imaginary part " +
                             std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace quditbp
