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
 * @file experiment.hpp
 * Ensemble sweeps: estimate the variance of one cost-function partial
 * derivative over random circuits, cell by cell over an (n, d', L) grid,
 * with deterministic seeding, bootstrap error bars, slope fits, and CSV/JSON
 * emission.
 *
 * Seeding contract: cell (n, d', L) under master seed s uses the cell seed
 * derive_seed(s, cell_salt(n, d', L)); sample i inside a cell with cell seed
 * c builds its circuit from an Rng seeded with derive_seed(c, i). Records
 * store the cell seed, so any single row can be reproduced directly with
 * estimate_variance_cell. Sample order, reduction order, and the bootstrap
 * stream are all fixed, so results are independent of the thread count.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quditbp/circuit.hpp"
#include "quditbp/gradient.hpp"
#include "quditbp/theory.hpp"

namespace quditbp {

/// Variance estimator centering: about the sample mean (Bessel-corrected)
/// or about the known ensemble mean 0.
enum class MeanMode : std::uint8_t { Empirical, Zero };

MeanMode mean_mode_from_string(const std::string& name);
const char* mean_mode_name(MeanMode mode);

struct ExperimentConfig {
  char template_label = 'D';
  std::vector<int> n_values;
  std::vector<int> dim_values;
  std::vector<int> layer_values;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  MeanMode mean_mode = MeanMode::Empirical;
  /// Worker threads per cell; 0 = all hardware threads.
  unsigned threads = 0;
  ParamIndex param{1, 1};
};

/// One estimated grid cell next to its closed-form prediction.
struct VarianceRecord {
  char template_label = 'D';
  int n = 0;
  int d_prime = 0;
  int layer_count = 0;
  std::size_t samples = 0;
  /// The cell seed (see the seeding contract above).
  std::uint64_t seed = 0;
  double grad_mean = 0.0;
  double grad_mean_se = 0.0;
  double grad_var = 0.0;
  double grad_var_se = 0.0;
  double theory_var = 0.0;
  double ratio = 0.0;

  friend bool operator==(const VarianceRecord&,
                         const VarianceRecord&) = default;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::string axis;
};

struct SweepResult {
  std::vector<VarianceRecord> records;
  /// Human-readable flags (non-monotone cells, mean/SE violations). Flagged
  /// cells stay in `records`; nothing is dropped.
  std::vector<std::string> warnings;
};

struct QuditSweepResult {
  std::vector<VarianceRecord> records;
  /// One fit of ln(variance) against n per d' value, in d' order.
  std::vector<SlopeFit> fits;
  std::vector<std::string> warnings;
};

struct DimensionFitResult {
  SlopeFit fit;
  /// Closed-form reference curve over the same d' values.
  std::vector<std::pair<int, double>> reference_curve;
};

/// Deterministic salt mixed into the master seed per grid cell.
std::uint64_t cell_salt(int n, int d_prime, int layer_count);

/**
 * Estimates one cell: `samples` independent circuits, the derivative at
 * `param` for each, mean/variance with standard errors (variance SE by
 * nonparametric bootstrap, 200 resamples), and the closed-form prediction.
 * Throws std::invalid_argument for samples < 2; dimension-cap errors
 * propagate.
 */
VarianceRecord estimate_variance_cell(char template_label, int n, int d_prime,
                                      int layer_count, std::size_t samples,
                                      std::uint64_t seed,
                                      MeanMode mean_mode = MeanMode::Empirical,
                                      unsigned threads = 0,
                                      ParamIndex param = {1, 1});

/// Diagnostic variant with an explicit observable (e.g. O = I).
VarianceRecord estimate_variance_cell(char template_label, int n, int d_prime,
                                      int layer_count, std::size_t samples,
                                      std::uint64_t seed,
                                      const Observable& observable,
                                      MeanMode mean_mode, unsigned threads,
                                      ParamIndex param);

/**
 * One record per (n, L, d') cell, n outermost and d' innermost, with
 * warnings for (a) variance not strictly decreasing as d' grows within an
 * (n, L) group and (b) |mean| > 5 SE(mean).
 */
SweepResult sweep_dimension(const ExperimentConfig& config);

/// Warning detector used by sweep_dimension; exposed for direct testing.
std::vector<std::string> detect_warnings(
    const std::vector<VarianceRecord>& records);

/**
 * Fixed-L sweep over n (one fit per d'). Requires exactly one L value and
 * at least 3 n values; throws std::invalid_argument otherwise.
 */
QuditSweepResult sweep_qudits(const ExperimentConfig& config);

/**
 * Least-squares fit of ln(variance) against ln(d') over records that must
 * share one (n, L) cell shape; needs >= 3 distinct d' values. Also returns
 * the closed-form curve over the same d' values for overlay.
 */
DimensionFitResult loglog_dimension_fit(
    const std::vector<VarianceRecord>& records);

/// Least-squares helper: fit y = slope * x + intercept, plus r^2.
SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& axis);

/**
 * CSV with the exact header
 * template,n,d_prime,L,samples,seed,grad_mean,grad_mean_se,grad_var,
 * grad_var_se,theory_var,ratio
 * and floating-point fields at 10 significant digits. Identical inputs
 * produce byte-identical files.
 */
void write_csv(const std::string& path,
               const std::vector<VarianceRecord>& records);
std::string csv_string(const std::vector<VarianceRecord>& records);

/// JSON document: {"config": ..., "records": [...], "warnings": [...]}.
void write_json(const std::string& path, const ExperimentConfig& config,
                const SweepResult& result);
std::string json_string(const ExperimentConfig& config,
                        const SweepResult& result);

}  // namespace quditbp
