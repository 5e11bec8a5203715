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

#include "quditbp/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "quditbp/kernels.hpp"

namespace quditbp {

std::size_t register_dimension(int n, int qudit_dim) {
  if (n < 1) {
    throw std::invalid_argument("register needs n >= 1 qudits");
  }
  if (qudit_dim < 2) {
    throw std::invalid_argument("register needs qudit_dim >= 2");
  }
  const std::size_t cap = dimension_cap();
  std::size_t d = 1;
  for (int s = 0; s < n; ++s) {
    if (d > cap / static_cast<std::size_t>(qudit_dim)) {
      throw dimension_cap_error(
          "register dimension " + std::to_string(qudit_dim) + "^" +
          std::to_string(n) + " exceeds the cap of " + std::to_string(cap) +
          " amplitudes");
    }
    d *= static_cast<std::size_t>(qudit_dim);
  }
  return d;
}

PureState initial_state(int n, int qudit_dim) {
  PureState state;
  state.n = n;
  state.qudit_dim = qudit_dim;
  state.amplitudes.assign(register_dimension(n, qudit_dim), Cx(0.0, 0.0));
  state.amplitudes[0] = Cx(1.0, 0.0);
  return state;
}

std::size_t site_stride(const PureState& state, int site) {
  if (site < 0 || site >= state.n) {
    throw std::out_of_range("site " + std::to_string(site) +
                            " out of range for n=" + std::to_string(state.n));
  }
  std::size_t stride = 1;
  for (int s = state.n - 1; s > site; --s) {
    stride *= static_cast<std::size_t>(state.qudit_dim);
  }
  return stride;
}

double state_norm(const PureState& state) {
  return std::sqrt(
      kernels::norm_sq(state.amplitudes.data(), state.amplitudes.size()));
}

Cx state_inner_product(const PureState& a, const PureState& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("inner product shape mismatch");
  }
  return kernels::inner_product(a.amplitudes.data(), b.amplitudes.data(),
                                a.amplitudes.size());
}

void apply_single_qudit_gate(PureState& state, int site,
                             const ComplexMatrix& m) {
  const std::size_t dp = static_cast<std::size_t>(state.qudit_dim);
  if (m.rows() != dp || m.cols() != dp) {
    throw std::invalid_argument("gate matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) +
                                ", expected " + std::to_string(dp) + "x" +
                                std::to_string(dp));
  }
  const std::size_t stride = site_stride(state, site);
  kernels::apply_site_matrix(state.amplitudes.data(), state.amplitudes.size(),
                             m.data(), dp, stride);
}

void cnot_apply(PureState& state, int control, int target) {
  if (control == target) {
    throw std::invalid_argument("cnot control and target must differ");
  }
  const std::size_t sc = site_stride(state, control);
  const std::size_t st = site_stride(state, target);
  const std::size_t dp = static_cast<std::size_t>(state.qudit_dim);
  const std::size_t block = st * dp;
  const std::size_t n_amps = state.amplitudes.size();
  Cx* amps = state.amplitudes.data();
  std::vector<Cx> buf(dp);
  for (std::size_t base = 0; base < n_amps; base += block) {
    for (std::size_t i = 0; i < st; ++i) {
      // All elements of this target fiber share their control digit; the
      // fiber member with target digit 0 is base + i.
      const std::size_t c = ((base + i) / sc) % dp;
      if (c == 0) continue;
      Cx* p = amps + base + i;
      for (std::size_t t = 0; t < dp; ++t) {
        buf[(t + c) % dp] = p[t * st];
      }
      for (std::size_t t = 0; t < dp; ++t) {
        p[t * st] = buf[t];
      }
    }
  }
}

}  // namespace quditbp
