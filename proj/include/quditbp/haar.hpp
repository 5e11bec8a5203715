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
 * @file haar.hpp
 * Haar-random unitary sampling and Monte-Carlo verification of the first-
 * and second-moment trace identities that the closed-form variance
 * predictions rest on.
 *
 * Moment identities, for W Haar-distributed on U(d):
 *
 *   (1) E[ Tr[WAW'B] ] = Tr[A] Tr[B] / d
 *
 *   (2) E[ Tr[WAW'B] Tr[WCW'D] ]
 *         = (Tr[A]Tr[B]Tr[C]Tr[D] + Tr[AC]Tr[BD]) / (d^2 - 1)
 *         - (Tr[AC]Tr[B]Tr[D] + Tr[A]Tr[C]Tr[BD]) / (d (d^2 - 1))
 *
 *   (3) E[ Tr[WAW'B WCW'D] ]
 *         = (Tr[A]Tr[C]Tr[BD] + Tr[AC]Tr[B]Tr[D]) / (d^2 - 1)
 *         - (Tr[AC]Tr[BD] + Tr[A]Tr[B]Tr[C]Tr[D]) / (d (d^2 - 1))
 *
 * (W' = W adjoint.) Both second-moment forms follow from the standard
 * rank-two Weingarten sum; they differ only in which index pairings survive
 * the two trace patterns, and
 *
 *   (2) - (3) = (Tr[A]Tr[C] - Tr[AC]) (Tr[B]Tr[D] - Tr[BD]) / (d (d - 1)),
 *
 * so the two averages coincide exactly when that product vanishes — e.g. for
 * A = C a pure-state projector, or B = D a pure-state projector — which is
 * the situation in the variance derivation. Statements that give (2) and (3)
 * one common right-hand side implicitly assume such inputs; the evaluators
 * here keep the two forms distinct, and the Monte-Carlo suite pins each to
 * its own formula.
 */
#pragma once

#include <cstdint>

#include "quditbp/circuit.hpp"
#include "quditbp/linalg.hpp"
#include "quditbp/rng.hpp"

namespace quditbp {

/// A Monte-Carlo moment estimate next to its closed form.
struct HaarMoment {
  Cx estimate;
  /// sqrt(sum |z_i - mean|^2 / (N-1)) / sqrt(N); 0 for constant samples.
  double standard_error = 0.0;
  Cx closed_form;
  std::size_t samples = 0;
};

/**
 * Haar-distributed d x d unitary: complex Ginibre matrix, QR factorization,
 * then each Q column is rescaled by the phase of the matching R diagonal
 * entry so the factorization is the unique one with positive-real R
 * diagonal. Without that correction QR sampling is not Haar.
 */
ComplexMatrix sample_haar_unitary(int d, Rng& rng);

/// Closed forms of the moment identities above (exact in the inputs).
Cx lemma1_closed_form(const ComplexMatrix& a, const ComplexMatrix& b);
Cx lemma2_closed_form(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ComplexMatrix& c, const ComplexMatrix& dd);
Cx lemma3_closed_form(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ComplexMatrix& c, const ComplexMatrix& dd);

/// Monte-Carlo estimate of E[Tr[WAW'B]] against identity (1).
HaarMoment mc_lemma1(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t samples, Rng& rng);

/// Monte-Carlo estimate of E[Tr[WAW'B] Tr[WCW'D]] against identity (2).
/// Throws std::domain_error at d = 1 (singular coefficients).
HaarMoment mc_lemma2(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& dd,
                     std::size_t samples, Rng& rng);

/// Monte-Carlo estimate of E[Tr[WAW'B WCW'D]] against identity (3).
/// Throws std::domain_error at d = 1.
HaarMoment mc_lemma3(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& dd,
                     std::size_t samples, Rng& rng);

/**
 * Sample mean of the partial derivative at k = (1,1) over random circuits,
 * with closed form 0 (the ensemble average of the derivative vanishes).
 * Sample i uses the sub-seed derive_seed(seed, i).
 */
HaarMoment mc_mean_gradient(const AnsatzTemplate& ansatz, int n, int qudit_dim,
                            int layer_count, std::size_t samples,
                            std::uint64_t seed);

/// Same, against an explicit observable (diagnostics use O = I).
HaarMoment mc_mean_gradient(const AnsatzTemplate& ansatz, int n, int qudit_dim,
                            int layer_count, std::size_t samples,
                            std::uint64_t seed, const Observable& observable);

}  // namespace quditbp
