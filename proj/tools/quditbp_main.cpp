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

// Command-line front end: variance sweeps, moment-identity verification,
// gradient cross-checks, and closed-form queries.
//
// Exit status: 0 on success, 1 when a requested numerical check fails its
// band, 2 on configuration or usage errors.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quditbp/experiment.hpp"
#include "quditbp/gradient.hpp"
#include "quditbp/haar.hpp"
#include "quditbp/parallel.hpp"
#include "quditbp/theory.hpp"

namespace {

using namespace quditbp;

struct SweepOptions {
  std::string ansatz = "D";
  std::vector<int> n_values;
  std::vector<int> dim_values;
  std::vector<int> layer_values;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  std::string config_path;
  std::string mean_mode = "empirical";

  CLI::Option* ansatz_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* dims_opt = nullptr;
  CLI::Option* layers_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* mean_mode_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_sweep_flags(CLI::App* sub, SweepOptions& o) {
  o.ansatz_opt =
      sub->add_option("--ansatz", o.ansatz, "Template label A|B|C|D");
  o.n_opt = sub->add_option("--n", o.n_values, "Qudit counts")
                ->delimiter(',');
  o.dims_opt = sub->add_option("--dims", o.dim_values, "Qudit dimensions d'")
                   ->delimiter(',');
  o.layers_opt = sub->add_option("--layers", o.layer_values, "Layer counts")
                     ->delimiter(',');
  o.samples_opt =
      sub->add_option("--samples", o.samples, "Circuits per grid cell");
  o.seed_opt = sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  o.threads_opt = sub->add_option("--threads", o.threads,
                                  "Worker threads (0 = all cores)");
  sub->add_option("--config", o.config_path,
                  "JSON config file; explicit flags override its values");
  o.mean_mode_opt =
      sub->add_option("--mean-mode", o.mean_mode,
                      "Variance centering: empirical or zero")
          ->check(CLI::IsMember({"empirical", "zero"}));
}

/// Fills fields that were not given on the command line from the JSON
/// config file (flags always win).
void apply_config_file(SweepOptions& o) {
  if (o.config_path.empty()) return;
  std::ifstream file(o.config_path);
  if (!file) {
    throw std::invalid_argument("cannot read config file " + o.config_path);
  }
  nlohmann::json j;
  file >> j;
  const auto take = [&](const char* key, CLI::Option* opt, auto& slot) {
    if (j.contains(key) && (opt == nullptr || opt->count() == 0)) {
      j.at(key).get_to(slot);
    }
  };
  take("template", o.ansatz_opt, o.ansatz);
  take("n", o.n_opt, o.n_values);
  take("dims", o.dims_opt, o.dim_values);
  take("layers", o.layers_opt, o.layer_values);
  take("samples", o.samples_opt, o.samples);
  take("seed", o.seed_opt, o.seed);
  take("mean_mode", o.mean_mode_opt, o.mean_mode);
  take("threads", o.threads_opt, o.threads);
}

ExperimentConfig to_experiment_config(const SweepOptions& o) {
  if (o.ansatz.size() != 1) {
    throw std::invalid_argument("--ansatz takes a single letter A|B|C|D");
  }
  ExperimentConfig cfg;
  cfg.template_label = o.ansatz[0];
  cfg.n_values = o.n_values;
  cfg.dim_values = o.dim_values;
  cfg.layer_values = o.layer_values;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.mean_mode = mean_mode_from_string(o.mean_mode);
  cfg.threads = o.threads;
  return cfg;
}

void emit(const SweepOptions& o, const ExperimentConfig& cfg,
          const SweepResult& result) {
  for (const std::string& w : result.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  const std::string body = o.format == "json"
                               ? json_string(cfg, result)
                               : csv_string(result.records);
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  if (o.format == "json") {
    write_json(o.out, cfg, result);
  } else {
    write_csv(o.out, result.records);
  }
  std::printf("wrote %zu records to %s\n", result.records.size(),
              o.out.c_str());
}

int run_sweep_dim(SweepOptions& o) {
  apply_config_file(o);
  const ExperimentConfig cfg = to_experiment_config(o);
  const SweepResult result = sweep_dimension(cfg);
  emit(o, cfg, result);
  return 0;
}

int run_sweep_qudits(SweepOptions& o) {
  apply_config_file(o);
  const ExperimentConfig cfg = to_experiment_config(o);
  const QuditSweepResult result = sweep_qudits(cfg);
  for (std::size_t i = 0; i < result.fits.size(); ++i) {
    const SlopeFit& fit = result.fits[i];
    std::printf(
        "fit d'=%d: ln(var) = %.6f * n + %.6f   (r^2 = %.4f)\n",
        cfg.dim_values[i], fit.slope, fit.intercept, fit.r_squared);
  }
  emit(o, cfg, SweepResult{result.records, result.warnings});
  return 0;
}

int run_theory(int n, int dim, double delta) {
  const double corollary = corollary_variance(n, dim);
  std::printf("n = %d, d' = %d\n", n, dim);
  std::printf("projector variance (closed form)  = %.9e\n", corollary);
  try {
    const VariancePrediction theorem = theorem_variance(
        Observable::global_zero_projector(n, dim), n, dim);
    std::printf("general-form variance (projector) = %.9e\n",
                theorem.variance);
  } catch (const dimension_cap_error&) {
    // Register too large to instantiate an observable; the closed form
    // above needs no allocation and still stands.
  }
  try {
    const Fraction exact = corollary_variance_exact(n, dim);
    std::printf("exact value                       = %" PRId64 "/%" PRId64
                "\n",
                exact.num, exact.den);
  } catch (const std::overflow_error&) {
    // d'^n exceeds 64-bit; the floating-point lines above still stand.
  }
  if (delta > 0.0) {
    std::printf("chebyshev bound at delta = %g     = %.9e\n", delta,
                chebyshev_bound(corollary, delta));
  }
  return 0;
}

int run_gradcheck(std::size_t trials, std::uint64_t seed, double step,
                  double tol) {
  const char labels[] = {'A', 'B', 'C', 'D'};
  double max_diff = 0.0;
  double max_abs = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const char label = labels[rng.uniform_index(4)];
    const int n = 1 + static_cast<int>(rng.uniform_index(3));
    const int dim = 2 + static_cast<int>(rng.uniform_index(3));
    const int layers = 1 + static_cast<int>(rng.uniform_index(10));
    const Circuit circuit =
        build_random_circuit(ansatz_template(label), n, dim, layers, rng);
    const ParamIndex k{1 + static_cast<int>(rng.uniform_index(
                               static_cast<std::size_t>(n))),
                       1 + static_cast<int>(rng.uniform_index(
                               static_cast<std::size_t>(layers)))};
    const Observable obs = Observable::global_zero_projector(n, dim);
    const double analytic = partial_derivative(circuit, obs, k);
    const double fd = finite_difference(circuit, obs, k, step);
    max_diff = std::max(max_diff, std::abs(analytic - fd));
    max_abs = std::max(max_abs, std::abs(analytic));
  }
  std::printf("gradcheck: %zu trials, max |analytic - fd| = %.3e "
              "(tolerance %.1e), max |dC| = %.4f\n",
              trials, max_diff, tol, max_abs);
  if (max_diff > tol) {
    std::printf("gradcheck: FAIL\n");
    return 1;
  }
  std::printf("gradcheck: PASS\n");
  return 0;
}

ComplexMatrix random_matrix(int d, Rng& rng) {
  ComplexMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      m(r, c) = rng.normal_complex();
    }
  }
  return m;
}

int run_verify_lemmas(std::size_t samples, std::uint64_t seed,
                      std::vector<int> dims, std::size_t tuples,
                      unsigned threads) {
  if (dims.empty()) dims = {2, 3, 4};
  struct Row {
    int lemma;
    int d;
    std::size_t tuple;
    HaarMoment moment;
  };
  std::vector<Row> rows;
  for (int lemma = 1; lemma <= 3; ++lemma) {
    for (const int d : dims) {
      for (std::size_t t = 0; t < tuples; ++t) {
        rows.push_back({lemma, d, t, {}});
      }
    }
  }
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : hw;
  }
  parallel_for(0, rows.size(), threads, [&](std::size_t i) {
    Row& row = rows[i];
    Rng tuple_rng(derive_seed(seed, 2 * i));
    Rng mc_rng(derive_seed(seed, 2 * i + 1));
    const ComplexMatrix a = random_matrix(row.d, tuple_rng);
    const ComplexMatrix b = random_matrix(row.d, tuple_rng);
    if (row.lemma == 1) {
      row.moment = mc_lemma1(a, b, samples, mc_rng);
      return;
    }
    const ComplexMatrix c = random_matrix(row.d, tuple_rng);
    const ComplexMatrix dd = random_matrix(row.d, tuple_rng);
    row.moment = row.lemma == 2 ? mc_lemma2(a, b, c, dd, samples, mc_rng)
                                : mc_lemma3(a, b, c, dd, samples, mc_rng);
  });
  std::size_t failures = 0;
  std::printf("%-8s %-3s %-6s %-12s %-12s %s\n", "moment", "d", "tuple",
              "|est-closed|", "3*SE", "status");
  for (const Row& row : rows) {
    const double diff = std::abs(row.moment.estimate - row.moment.closed_form);
    const double band = 3.0 * row.moment.standard_error;
    const bool ok = diff <= band;
    if (!ok) ++failures;
    std::printf("lemma%-3d %-3d %-6zu %-12.4e %-12.4e %s\n", row.lemma, row.d,
                row.tuple, diff, band, ok ? "PASS" : "FAIL");
  }
  // Ensemble-average of the derivative itself, which must vanish.
  const HaarMoment mean_grad = mc_mean_gradient(
      ansatz_template('D'), 3, 2, 30, 2000, derive_seed(seed, 0xFEEDu));
  const double mean_diff = std::abs(mean_grad.estimate);
  const double mean_band = 3.0 * mean_grad.standard_error;
  const bool mean_ok = mean_diff <= mean_band;
  if (!mean_ok) ++failures;
  std::printf("%-8s %-3s %-6s %-12.4e %-12.4e %s\n", "mean", "-", "-",
              mean_diff, mean_band, mean_ok ? "PASS" : "FAIL");
  std::printf("verify-lemmas: %zu/%zu rows within 3 standard errors\n",
              rows.size() + 1 - failures, rows.size() + 1);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qudit statevector simulator: gradient-variance experiments for "
      "layered random circuits"};
  app.require_subcommand(1);

  SweepOptions dim_opts;
  CLI::App* sweep_dim = app.add_subcommand(
      "sweep-dim", "Variance over an (n, d', L) grid with closed-form ratio");
  add_sweep_flags(sweep_dim, dim_opts);

  SweepOptions qudit_opts;
  CLI::App* sweep_qudits = app.add_subcommand(
      "sweep-qudits", "Variance vs qudit count at fixed L, with slope fits");
  add_sweep_flags(sweep_qudits, qudit_opts);

  std::size_t lemma_samples = 100000;
  std::uint64_t lemma_seed = 20260819;
  std::vector<int> lemma_dims;
  std::size_t lemma_tuples = 10;
  unsigned lemma_threads = 0;
  CLI::App* verify = app.add_subcommand(
      "verify-lemmas",
      "Monte-Carlo check of the Haar moment identities (exit 1 on failure)");
  verify->add_option("--samples", lemma_samples, "Haar samples per row");
  verify->add_option("--seed", lemma_seed, "Master seed");
  verify->add_option("--dims", lemma_dims, "Dimensions (default 2,3,4)")
      ->delimiter(',');
  verify->add_option("--tuples", lemma_tuples, "Random tuples per (lemma, d)");
  verify->add_option("--threads", lemma_threads,
                     "Worker threads (0 = all cores)");

  std::size_t grad_trials = 500;
  std::uint64_t grad_seed = 7;
  double grad_step = 1e-5;
  double grad_tol = 1e-6;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck",
      "Analytic derivative vs central finite difference (exit 1 on failure)");
  gradcheck->add_option("--trials", grad_trials, "Random circuits to test");
  gradcheck->add_option("--seed", grad_seed, "Master seed");
  gradcheck->add_option("--step", grad_step, "Finite-difference step");
  gradcheck->add_option("--tol", grad_tol, "Max allowed |analytic - fd|");

  int theory_n = 3;
  int theory_dim = 2;
  double theory_delta = 0.0;
  CLI::App* theory = app.add_subcommand(
      "theory", "Closed-form variance predictions for the zero projector");
  theory->add_option("--n", theory_n, "Qudit count")->required();
  theory->add_option("--dim", theory_dim, "Qudit dimension d'")->required();
  theory->add_option("--delta", theory_delta,
                     "Also print the Chebyshev bound at this delta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep_dim->parsed()) return run_sweep_dim(dim_opts);
    if (sweep_qudits->parsed()) return run_sweep_qudits(qudit_opts);
    if (verify->parsed()) {
      return run_verify_lemmas(lemma_samples, lemma_seed, lemma_dims,
                               lemma_tuples, lemma_threads);
    }
    if (gradcheck->parsed()) {
      return run_gradcheck(grad_trials, grad_seed, grad_step, grad_tol);
    }
    if (theory->parsed()) {
      return run_theory(theory_n, theory_dim, theory_delta);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
