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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <json.hpp>
#include <stdexcept>
#include <vector>

#include "quditbp/circuit.hpp"
#include "quditbp/gates.hpp"
#include "quditbp/kernels.hpp"
#include "quditbp/linalg.hpp"
#include "quditbp/rng.hpp"
#include "quditbp/state.hpp"

using quditbp::AnsatzTemplate;
using quditbp::Axis;
using quditbp::Circuit;
using quditbp::ComplexMatrix;
using quditbp::ComplexVector;
using quditbp::Cx;
using quditbp::Entangler;
using quditbp::Layer;
using quditbp::Observable;
using quditbp::Ordering;
using quditbp::PureState;
using quditbp::RotationGate;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Decodes amplitude index -> per-site digits, site 0 most significant.
std::vector<int> digits_of(std::size_t index, int n, int d) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int s = n - 1; s >= 0; --s) {
    out[static_cast<std::size_t>(s)] = static_cast<int>(index % d);
    index /= static_cast<std::size_t>(d);
  }
  return out;
}

std::size_t index_of(const std::vector<int>& digits, int d) {
  std::size_t idx = 0;
  for (int digit : digits) idx = idx * static_cast<std::size_t>(d) +
                                 static_cast<std::size_t>(digit);
  return idx;
}

// Independent dense oracle for one CNOT pair via digit arithmetic.
ComplexMatrix cnot_pair_matrix(int n, int d, int control, int target) {
  const std::size_t dim = quditbp::register_dimension(n, d);
  ComplexMatrix p(dim, dim);
  for (std::size_t in = 0; in < dim; ++in) {
    std::vector<int> ds = digits_of(in, n, d);
    ds[static_cast<std::size_t>(target)] =
        (ds[static_cast<std::size_t>(target)] +
         ds[static_cast<std::size_t>(control)]) % d;
    p(index_of(ds, d), in) = Cx{1.0, 0.0};
  }
  return p;
}

// Dense oracle for the full entangler of a template, composing pair
// matrices in the same order the simulator applies them.
ComplexMatrix entangler_matrix(int n, int d, Entangler entangler) {
  const std::size_t dim = quditbp::register_dimension(n, d);
  ComplexMatrix u = ComplexMatrix::identity(dim);
  if (entangler == Entangler::Linear) {
    for (int m = 0; m + 1 < n; ++m) {
      u = quditbp::matmul(cnot_pair_matrix(n, d, m, m + 1), u);
    }
  } else {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        u = quditbp::matmul(cnot_pair_matrix(n, d, a, b), u);
      }
    }
  }
  return u;
}

// Dense oracle for one layer: Kronecker product of the rotations (site 0 is
// the leftmost factor), composed with the entangler in template order.
ComplexMatrix layer_matrix(const Layer& layer, const AnsatzTemplate& ansatz,
                           int n, int d) {
  ComplexMatrix rot = quditbp::rotation_matrix(layer.rotations[0]);
  for (int s = 1; s < n; ++s) {
    rot = quditbp::kron(rot, quditbp::rotation_matrix(
                                 layer.rotations[static_cast<std::size_t>(s)]));
  }
  const ComplexMatrix ent = entangler_matrix(n, d, ansatz.entangler);
  if (ansatz.ordering == Ordering::RotationsFirst) {
    return quditbp::matmul(ent, rot);  // rotations act first
  }
  return quditbp::matmul(rot, ent);
}

PureState random_state(quditbp::Rng& rng, int n, int d) {
  PureState s = quditbp::initial_state(n, d);
  double norm_sq = 0.0;
  for (Cx& z : s.amplitudes) {
    z = rng.normal_complex();
    norm_sq += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (Cx& z : s.amplitudes) z *= inv;
  return s;
}

double max_amp_diff(const ComplexVector& a, const ComplexVector& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

PureState basis_state(int n, int d, const std::vector<int>& digits) {
  PureState s = quditbp::initial_state(n, d);
  s.amplitudes[0] = Cx{0.0, 0.0};
  s.amplitudes[index_of(digits, d)] = Cx{1.0, 0.0};
  return s;
}

}  // namespace

TEST_CASE("template labels map to the documented layouts") {
  const AnsatzTemplate a = quditbp::ansatz_template('A');
  CHECK(a.entangler == Entangler::Linear);
  CHECK(a.ordering == Ordering::RotationsFirst);
  CHECK(a.label == 'A');
  const AnsatzTemplate b = quditbp::ansatz_template('B');
  CHECK(b.entangler == Entangler::Linear);
  CHECK(b.ordering == Ordering::EntanglerFirst);
  const AnsatzTemplate c = quditbp::ansatz_template('C');
  CHECK(c.entangler == Entangler::AllToAll);
  CHECK(c.ordering == Ordering::RotationsFirst);
  const AnsatzTemplate d = quditbp::ansatz_template('D');
  CHECK(d.entangler == Entangler::AllToAll);
  CHECK(d.ordering == Ordering::EntanglerFirst);

  CHECK_THROWS_AS(quditbp::ansatz_template('E'), std::invalid_argument);
  CHECK_THROWS_AS(quditbp::ansatz_template('a'), std::invalid_argument);
}

TEST_CASE("build_random_circuit produces the right shape deterministically") {
  quditbp::Rng rng(123);
  const Circuit c = quditbp::build_random_circuit(
      quditbp::ansatz_template('B'), 3, 2, 10, rng);
  CHECK(c.n == 3);
  CHECK(c.qudit_dim == 2);
  CHECK(c.depth() == 10);
  CHECK(c.parameter_count() == 30);
  REQUIRE(c.layers.size() == 10);
  for (const Layer& layer : c.layers) {
    REQUIRE(layer.rotations.size() == 3);
    for (const RotationGate& g : layer.rotations) {
      CHECK(g.generator.qudit_dim == 2);
      CHECK(g.angle >= 0.0);
      CHECK(g.angle < 2.0 * kPi);
      if (g.generator.axis == Axis::Z) CHECK(g.generator.k == 0);
    }
  }

  quditbp::Rng rng2(123);
  const Circuit c2 = quditbp::build_random_circuit(
      quditbp::ansatz_template('B'), 3, 2, 10, rng2);
  CHECK(quditbp::circuit_to_json(c) == quditbp::circuit_to_json(c2));

  quditbp::Rng rng3(124);
  const Circuit c3 = quditbp::build_random_circuit(
      quditbp::ansatz_template('B'), 3, 2, 10, rng3);
  CHECK(quditbp::circuit_to_json(c) != quditbp::circuit_to_json(c3));
}

TEST_CASE("circuit_to_json carries the full description") {
  quditbp::Rng rng(7);
  Circuit c = quditbp::build_random_circuit(quditbp::ansatz_template('C'), 2,
                                            3, 4, rng);
  c.build_seed = 7;
  const nlohmann::json doc = nlohmann::json::parse(quditbp::circuit_to_json(c));
  CHECK(doc.at("template").get<std::string>() == "C");
  CHECK(doc.at("n").get<int>() == 2);
  CHECK(doc.at("d_prime").get<int>() == 3);
  CHECK(doc.at("L").get<int>() == 4);
  CHECK(doc.at("seed").get<std::uint64_t>() == 7);
  REQUIRE(doc.at("layers").size() == 4);
  for (const auto& layer : doc.at("layers")) {
    REQUIRE(layer.size() == 2);
    for (const auto& gate : layer) {
      const std::string axis = gate.at("axis").get<std::string>();
      CHECK((axis == "X" || axis == "Y" || axis == "Z"));
      CHECK(gate.at("j").get<int>() >= 1);
      CHECK(gate.contains("theta"));
      if (axis == "Z") {
        CHECK(!gate.contains("k"));
      } else {
        CHECK(gate.at("k").get<int>() > gate.at("j").get<int>());
      }
    }
  }
}

TEST_CASE("initial_state is |0...0>") {
  const PureState s = quditbp::initial_state(3, 4);
  REQUIRE(s.amplitudes.size() == 64);
  CHECK(s.amplitudes[0] == Cx{1.0, 0.0});
  for (std::size_t i = 1; i < 64; ++i) CHECK(s.amplitudes[i] == Cx{0.0, 0.0});
  CHECK(quditbp::state_norm(s) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quditbp::site_stride(s, 0) == 16);
  CHECK(quditbp::site_stride(s, 2) == 1);
  CHECK_THROWS_AS(quditbp::site_stride(s, 3), std::out_of_range);
  CHECK_THROWS_AS(quditbp::site_stride(s, -1), std::out_of_range);
}

TEST_CASE("a zero-angle layer fixes |0...0>") {
  for (char label : {'A', 'B', 'C', 'D'}) {
    const AnsatzTemplate ansatz = quditbp::ansatz_template(label);
    PureState s = quditbp::initial_state(2, 3);
    Layer layer;
    layer.rotations.push_back({{Axis::X, 1, 2, 3}, 0.0});
    layer.rotations.push_back({{Axis::Z, 1, 0, 3}, 0.0});
    quditbp::apply_layer(s, layer, ansatz);
    CHECK(std::abs(s.amplitudes[0] - Cx{1.0, 0.0}) <= 1e-15);
    for (std::size_t i = 1; i < 9; ++i) CHECK(std::abs(s.amplitudes[i]) == 0.0);
  }
}

TEST_CASE("single-site pi rotation maps |0> to -i|1>") {
  PureState s = quditbp::initial_state(1, 2);
  Layer layer;
  layer.rotations.push_back({{Axis::X, 1, 2, 2}, kPi});
  quditbp::apply_layer(s, layer, quditbp::ansatz_template('A'));
  CHECK(std::abs(s.amplitudes[0]) <= 1e-15);
  CHECK(std::abs(s.amplitudes[1] - Cx{0.0, -1.0}) <= 1e-15);
}

TEST_CASE("apply_layer rejects shape mismatches") {
  PureState s = quditbp::initial_state(2, 2);
  Layer wrong;  // one rotation for a two-site register
  wrong.rotations.push_back({{Axis::X, 1, 2, 2}, 0.3});
  CHECK_THROWS_AS(
      quditbp::apply_layer(s, wrong, quditbp::ansatz_template('A')),
      std::invalid_argument);

  Layer wrong_dim;
  wrong_dim.rotations.push_back({{Axis::X, 1, 2, 3}, 0.3});
  wrong_dim.rotations.push_back({{Axis::X, 1, 2, 3}, 0.3});
  CHECK_THROWS_AS(
      quditbp::apply_layer(s, wrong_dim, quditbp::ansatz_template('A')),
      std::invalid_argument);
}

TEST_CASE("random layers preserve the norm") {
  quditbp::Rng rng(0xC1C1ULL);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_index(4));  // 2..5
    const int n = 1 + static_cast<int>(rng.uniform_index(4));  // 1..4
    const char label = "ABCD"[rng.uniform_index(4)];
    PureState s = random_state(rng, n, d);
    Layer layer;
    for (int site = 0; site < n; ++site) {
      layer.rotations.push_back(
          {quditbp::random_generator(rng, d), rng.uniform(0.0, 2.0 * kPi)});
    }
    quditbp::apply_layer(s, layer, quditbp::ansatz_template(label));
    CHECK(std::abs(quditbp::state_norm(s) - 1.0) <= 1e-10);
  }
}

TEST_CASE("evolve with no layers returns the input state") {
  Circuit c;
  c.ansatz = quditbp::ansatz_template('D');
  c.n = 2;
  c.qudit_dim = 3;
  quditbp::Rng rng(5);
  const PureState in = random_state(rng, 2, 3);
  const PureState out = quditbp::evolve(c, in);
  CHECK(max_amp_diff(in.amplitudes, out.amplitudes) == 0.0);
}

TEST_CASE("a reversed negated single-site circuit inverts evolution") {
  quditbp::Rng rng(0xF00DULL);
  for (char label : {'A', 'B'}) {
    Circuit c = quditbp::build_random_circuit(quditbp::ansatz_template(label),
                                              1, 4, 8, rng);
    const PureState psi = quditbp::evolve(c, quditbp::initial_state(1, 4));

    Circuit inverse = c;
    inverse.layers.clear();
    for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
      Layer flipped = *it;
      for (RotationGate& g : flipped.rotations) g.angle = -g.angle;
      inverse.layers.push_back(flipped);
    }
    const PureState back = quditbp::evolve(inverse, psi);
    CHECK(std::abs(back.amplitudes[0] - Cx{1.0, 0.0}) <= 1e-9);
    for (std::size_t i = 1; i < 4; ++i) {
      CHECK(std::abs(back.amplitudes[i]) <= 1e-9);
    }
  }
}

TEST_CASE("cnot_apply shifts the target digit by the control digit") {
  // d' = 2: |10> -> |11>.
  PureState s = basis_state(2, 2, {1, 0});
  quditbp::cnot_apply(s, 0, 1);
  CHECK(std::abs(s.amplitudes[index_of({1, 1}, 2)] - Cx{1.0, 0.0}) == 0.0);

  // d' = 3: |1,2> -> |1,0>.
  PureState t = basis_state(2, 3, {1, 2});
  quditbp::cnot_apply(t, 0, 1);
  CHECK(std::abs(t.amplitudes[index_of({1, 0}, 3)] - Cx{1.0, 0.0}) == 0.0);
  CHECK(std::abs(t.amplitudes[index_of({1, 2}, 3)]) == 0.0);

  // d' = 4: zero control leaves |0,3> alone.
  PureState u = basis_state(2, 4, {0, 3});
  quditbp::cnot_apply(u, 0, 1);
  CHECK(std::abs(u.amplitudes[index_of({0, 3}, 4)] - Cx{1.0, 0.0}) == 0.0);

  // Reversed roles: control = site 1. |1,2> at d'=3 -> |(1+2)%3, 2> = |0,2>.
  PureState v = basis_state(2, 3, {1, 2});
  quditbp::cnot_apply(v, 1, 0);
  CHECK(std::abs(v.amplitudes[index_of({0, 2}, 3)] - Cx{1.0, 0.0}) == 0.0);

  CHECK_THROWS_AS(quditbp::cnot_apply(v, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(quditbp::cnot_apply(v, 0, 2), std::out_of_range);
}

TEST_CASE("cnot_apply to the d'-th power is the identity") {
  quditbp::Rng rng(0xBEEFULL);
  for (int d = 2; d <= 5; ++d) {
    for (auto [control, target] : {std::pair{0, 2}, std::pair{2, 0}}) {
      PureState s = random_state(rng, 3, d);
      const ComplexVector original = s.amplitudes;
      for (int rep = 0; rep < d; ++rep) {
        quditbp::cnot_apply(s, control, target);
      }
      CHECK(max_amp_diff(s.amplitudes, original) <= 1e-12);
    }
  }
}

TEST_CASE("cnot_apply matches the dense pair matrix") {
  quditbp::Rng rng(0xCAFEULL);
  for (int d : {2, 3}) {
    for (int control = 0; control < 3; ++control) {
      for (int target = 0; target < 3; ++target) {
        if (control == target) continue;
        PureState s = random_state(rng, 3, d);
        const ComplexMatrix p = cnot_pair_matrix(3, d, control, target);
        ComplexVector expected(s.amplitudes.size());
        quditbp::kernels::matvec(p.data(), s.amplitudes.data(),
                                 expected.data(), p.rows(), p.cols());
        quditbp::cnot_apply(s, control, target);
        CHECK(max_amp_diff(s.amplitudes, expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("strided layer application matches the dense Kronecker oracle") {
  quditbp::Rng rng(0xD15EA5EULL);
  // Register dimensions up to 81 keep the dense oracle cheap: covers
  // (n, d') in {(2,2..9), (3,2..4), (4,2..3)}.
  const std::pair<int, int> shapes[] = {{2, 2}, {2, 3}, {2, 5}, {2, 9},
                                        {3, 2}, {3, 3}, {3, 4}, {4, 2},
                                        {4, 3}};
  for (auto [n, d] : shapes) {
    for (char label : {'A', 'B', 'C', 'D'}) {
      const AnsatzTemplate ansatz = quditbp::ansatz_template(label);
      Layer layer;
      for (int site = 0; site < n; ++site) {
        layer.rotations.push_back(
            {quditbp::random_generator(rng, d), rng.uniform(0.0, 2.0 * kPi)});
      }
      PureState s = random_state(rng, n, d);
      const ComplexMatrix dense = layer_matrix(layer, ansatz, n, d);
      ComplexVector expected(s.amplitudes.size());
      quditbp::kernels::matvec(dense.data(), s.amplitudes.data(),
                               expected.data(), dense.rows(), dense.cols());
      quditbp::apply_layer(s, layer, ansatz);
      CHECK(max_amp_diff(s.amplitudes, expected) <= 1e-9);
    }
  }
}

TEST_CASE("Observable validates Hermiticity and exposes traces") {
  ComplexMatrix h(2, 2);
  h(0, 0) = Cx{1.0, 0.0};
  h(0, 1) = Cx{0.0, 1.0};
  h(1, 0) = Cx{0.0, -1.0};
  h(1, 1) = Cx{3.0, 0.0};
  const Observable obs = Observable::from_matrix(h);
  CHECK(obs.dim() == 2);
  CHECK(obs.trace() == doctest::Approx(4.0).epsilon(1e-15));
  // Tr[O^2] = sum |entries|^2 for Hermitian O: 1 + 1 + 1 + 9 = 12.
  CHECK(obs.trace_sq() == doctest::Approx(12.0).epsilon(1e-15));

  ComplexMatrix bad(2, 2);
  bad(0, 1) = Cx{1.0, 0.0};
  CHECK_THROWS_AS(Observable::from_matrix(bad), std::invalid_argument);

  ComplexMatrix rect(2, 3);
  CHECK_THROWS_AS(Observable::from_matrix(rect), std::invalid_argument);
}

TEST_CASE("projector observable agrees with its dense form") {
  quditbp::Rng rng(0x0B5ULL);
  const std::size_t dim = 9;
  const std::size_t index = 4;
  const Observable fast = Observable::basis_projector(index, dim);
  const Observable dense =
      Observable::from_matrix(quditbp::basis_projector(index, dim));

  CHECK(fast.dim() == dense.dim());
  CHECK(fast.trace() == doctest::Approx(dense.trace()).epsilon(1e-15));
  CHECK(fast.trace_sq() == doctest::Approx(dense.trace_sq()).epsilon(1e-15));
  CHECK(fast.trace() == doctest::Approx(1.0).epsilon(1e-15));

  ComplexVector in(dim), out_fast(dim), out_dense(dim);
  for (Cx& z : in) z = rng.normal_complex();
  fast.apply(in.data(), out_fast.data());
  dense.apply(in.data(), out_dense.data());
  CHECK(max_amp_diff(out_fast, out_dense) <= 1e-12);

  ComplexVector other(dim);
  for (Cx& z : other) z = rng.normal_complex();
  CHECK(std::abs(fast.matrix_element(in, other) -
                 dense.matrix_element(in, other)) <= 1e-12);
  // <a|P|b> = conj(a_index) * b_index for the projector.
  CHECK(std::abs(fast.matrix_element(in, other) -
                 std::conj(in[index]) * other[index]) <= 1e-15);
}

TEST_CASE("global_zero_projector targets amplitude zero of the register") {
  const Observable p = Observable::global_zero_projector(2, 3);
  CHECK(p.dim() == 9);
  CHECK(p.trace() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.trace_sq() == doctest::Approx(1.0).epsilon(1e-15));
  ComplexVector in(9, Cx{0.5, -0.25});
  ComplexVector out(9);
  p.apply(in.data(), out.data());
  CHECK(std::abs(out[0] - in[0]) == 0.0);
  for (std::size_t i = 1; i < 9; ++i) CHECK(std::abs(out[i]) == 0.0);
}

TEST_CASE("cost hand values") {
  // Empty circuit: state stays |0...0>, zero projector gives 1.
  Circuit empty;
  empty.ansatz = quditbp::ansatz_template('A');
  empty.n = 2;
  empty.qudit_dim = 2;
  CHECK(quditbp::cost(empty, Observable::global_zero_projector(2, 2)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // One pi pulse on a single qubit: |0> -> -i|1>, projector cost 0.
  Circuit flip;
  flip.ansatz = quditbp::ansatz_template('A');
  flip.n = 1;
  flip.qudit_dim = 2;
  Layer layer;
  layer.rotations.push_back({{Axis::X, 1, 2, 2}, kPi});
  flip.layers.push_back(layer);
  CHECK(std::abs(quditbp::cost(flip, Observable::global_zero_projector(1, 2)))
        <= 1e-14);
}

TEST_CASE("cost of the identity is one and projector costs stay in [0, 1]") {
  quditbp::Rng rng(0x5CA1EULL);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_index(3));  // 2..4
    const int n = 1 + static_cast<int>(rng.uniform_index(3));  // 1..3
    const char label = "ABCD"[rng.uniform_index(4)];
    const int layers = 1 + static_cast<int>(rng.uniform_index(6));
    const Circuit c = quditbp::build_random_circuit(
        quditbp::ansatz_template(label), n, d, layers, rng);

    const std::size_t dim = quditbp::register_dimension(n, d);
    CHECK(quditbp::cost(c, Observable::identity(dim)) ==
          doctest::Approx(1.0).epsilon(1e-10));

    const double v = quditbp::cost(c, Observable::global_zero_projector(n, d));
    CHECK(v >= -1e-10);
    CHECK(v <= 1.0 + 1e-10);
  }
}
