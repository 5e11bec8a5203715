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

#include "quditbp/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quditbp {

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::X:
      return "X";
    case Axis::Y:
      return "Y";
    case Axis::Z:
      return "Z";
  }
  return "?";
}

void validate_generator(const GellMannGenerator& gen) {
  const int d = gen.qudit_dim;
  if (d < 2) {
    throw std::invalid_argument("generator qudit_dim must be >= 2, got " +
                                std::to_string(d));
  }
  if (gen.axis == Axis::Z) {
    if (gen.k != 0) {
      throw std::invalid_argument("Z generator takes no k index");
    }
    if (gen.j < 1 || gen.j > d - 1) {
      throw std::invalid_argument("Z generator needs 1 <= j <= d'-1, got j=" +
                                  std::to_string(gen.j));
    }
    return;
  }
  if (gen.j < 1 || gen.k <= gen.j || gen.k > d) {
    throw std::invalid_argument(
        std::string(axis_name(gen.axis)) +
        " generator needs 1 <= j < k <= d', got j=" + std::to_string(gen.j) +
        " k=" + std::to_string(gen.k));
  }
}

ComplexMatrix gell_mann_matrix(const GellMannGenerator& gen) {
  validate_generator(gen);
  const std::size_t d = static_cast<std::size_t>(gen.qudit_dim);
  ComplexMatrix s(d, d);
  // 1-based ket label |m> lives at amplitude index m-1.
  const std::size_t j = static_cast<std::size_t>(gen.j) - 1;
  switch (gen.axis) {
    case Axis::X: {
      const std::size_t k = static_cast<std::size_t>(gen.k) - 1;
      s(j, k) = Cx(1.0, 0.0);
      s(k, j) = Cx(1.0, 0.0);
      break;
    }
    case Axis::Y: {
      const std::size_t k = static_cast<std::size_t>(gen.k) - 1;
      s(j, k) = Cx(0.0, -1.0);
      s(k, j) = Cx(0.0, 1.0);
      break;
    }
    case Axis::Z: {
      const double coeff =
          std::sqrt(2.0 / (static_cast<double>(gen.j) * (gen.j + 1.0)));
      for (std::size_t m = 0; m <= j; ++m) {
        s(m, m) = Cx(coeff, 0.0);
      }
      s(j + 1, j + 1) = Cx(-coeff * static_cast<double>(gen.j), 0.0);
      break;
    }
  }
  return s;
}

ComplexMatrix rotation_matrix(const RotationGate& gate) {
  const GellMannGenerator& gen = gate.generator;
  validate_generator(gen);
  const std::size_t d = static_cast<std::size_t>(gen.qudit_dim);
  const double half = 0.5 * gate.angle;

  if (gen.axis == Axis::Z) {
    const ComplexMatrix s = gell_mann_matrix(gen);
    ComplexMatrix r(d, d);
    for (std::size_t m = 0; m < d; ++m) {
      r(m, m) = std::exp(Cx(0.0, -half * s(m, m).real()));
    }
    return r;
  }

  // R = I + (cos(a/2) - 1)(|j><j| + |k><k|) - i sin(a/2) S
  const std::size_t j = static_cast<std::size_t>(gen.j) - 1;
  const std::size_t k = static_cast<std::size_t>(gen.k) - 1;
  const double c = std::cos(half);
  const double sn = std::sin(half);
  ComplexMatrix r = ComplexMatrix::identity(d);
  r(j, j) = Cx(c, 0.0);
  r(k, k) = Cx(c, 0.0);
  if (gen.axis == Axis::X) {
    r(j, k) = Cx(0.0, -sn);
    r(k, j) = Cx(0.0, -sn);
  } else {
    // -i sin(a/2) * (-i) = -sin(a/2) at (j,k); -i sin(a/2) * (+i) = +sin(a/2)
    r(j, k) = Cx(-sn, 0.0);
    r(k, j) = Cx(sn, 0.0);
  }
  return r;
}

GellMannGenerator random_generator(Rng& rng, int qudit_dim) {
  if (qudit_dim < 2) {
    throw std::invalid_argument("random_generator needs qudit_dim >= 2");
  }
  GellMannGenerator gen;
  gen.qudit_dim = qudit_dim;
  switch (rng.uniform_index(3)) {
    case 0:
      gen.axis = Axis::X;
      break;
    case 1:
      gen.axis = Axis::Y;
      break;
    default:
      gen.axis = Axis::Z;
      break;
  }
  if (gen.axis == Axis::Z) {
    gen.j = 1 + static_cast<int>(rng.uniform_index(
                    static_cast<std::uint64_t>(qudit_dim - 1)));
    gen.k = 0;
    return gen;
  }
  const std::uint64_t n_pairs =
      static_cast<std::uint64_t>(qudit_dim) * (qudit_dim - 1) / 2;
  std::uint64_t idx = rng.uniform_index(n_pairs);
  // Lexicographic (j, k) decode: j = 1 owns d'-1 pairs, j = 2 owns d'-2, ...
  int j = 1;
  std::uint64_t row = static_cast<std::uint64_t>(qudit_dim - 1);
  while (idx >= row) {
    idx -= row;
    --row;
    ++j;
  }
  gen.j = j;
  gen.k = j + 1 + static_cast<int>(idx);
  return gen;
}

ComplexMatrix QuditCnot::matrix() const {
  if (qudit_dim < 2) {
    throw std::invalid_argument("QuditCnot needs qudit_dim >= 2");
  }
  const std::size_t dp = static_cast<std::size_t>(qudit_dim);
  ComplexMatrix m(dp * dp, dp * dp);
  for (std::size_t x = 0; x < dp; ++x) {
    for (std::size_t y = 0; y < dp; ++y) {
      const std::size_t in = x * dp + y;
      const std::size_t out = x * dp + (x + y) % dp;
      m(out, in) = Cx(1.0, 0.0);
    }
  }
  return m;
}

}  // namespace quditbp
