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

#include "quditbp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "quditbp/parallel.hpp"
#include "quditbp/rng.hpp"

namespace quditbp {

namespace {

constexpr std::size_t kBootstrapResamples = 200;
/// Salt separating the bootstrap stream from the per-sample circuit seeds.
constexpr std::uint64_t kBootstrapSalt = 0xB0075u;

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

double variance_about(const std::vector<double>& xs, MeanMode mode,
                      double mean) {
  double acc = 0.0;
  if (mode == MeanMode::Zero) {
    for (const double x : xs) acc += x * x;
    return acc / static_cast<double>(xs.size());
  }
  for (const double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

double mean_of(const std::vector<double>& xs) {
  double acc = 0.0;
  for (const double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

void append_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  out += buf;
}

}  // namespace

MeanMode mean_mode_from_string(const std::string& name) {
  if (name == "empirical") return MeanMode::Empirical;
  if (name == "zero") return MeanMode::Zero;
  throw std::invalid_argument("unknown mean mode: " + name);
}

const char* mean_mode_name(MeanMode mode) {
  return mode == MeanMode::Empirical ? "empirical" : "zero";
}

std::uint64_t cell_salt(int n, int d_prime, int layer_count) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 42) ^
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(d_prime))
          << 21) ^
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(layer_count));
}

VarianceRecord estimate_variance_cell(char template_label, int n, int d_prime,
                                      int layer_count, std::size_t samples,
                                      std::uint64_t seed, MeanMode mean_mode,
                                      unsigned threads, ParamIndex param) {
  return estimate_variance_cell(
      template_label, n, d_prime, layer_count, samples, seed,
      Observable::global_zero_projector(n, d_prime), mean_mode, threads,
      param);
}

VarianceRecord estimate_variance_cell(char template_label, int n, int d_prime,
                                      int layer_count, std::size_t samples,
                                      std::uint64_t seed,
                                      const Observable& observable,
                                      MeanMode mean_mode, unsigned threads,
                                      ParamIndex param) {
  if (samples < 2) {
    throw std::invalid_argument("a variance cell needs samples >= 2");
  }
  const AnsatzTemplate ansatz = ansatz_template(template_label);
  register_dimension(n, d_prime);  // fail fast on dims and the cap

  std::vector<double> derivs(samples);
  parallel_for(0, samples, resolve_threads(threads), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    Circuit circuit =
        build_random_circuit(ansatz, n, d_prime, layer_count, rng);
    derivs[i] = partial_derivative(circuit, observable, param);
  });

  const double mean = mean_of(derivs);
  const double var_about_mean =
      variance_about(derivs, MeanMode::Empirical, mean);
  const double var =
      mean_mode == MeanMode::Empirical
          ? var_about_mean
          : variance_about(derivs, MeanMode::Zero, 0.0);

  // Nonparametric bootstrap for the SE of the variance estimate. Sequential
  // and seeded from the cell seed, so it never depends on the thread count.
  Rng boot_rng(derive_seed(seed, kBootstrapSalt));
  std::vector<double> resample(samples);
  std::vector<double> boot_vars(kBootstrapResamples);
  for (std::size_t b = 0; b < kBootstrapResamples; ++b) {
    for (std::size_t i = 0; i < samples; ++i) {
      resample[i] = derivs[boot_rng.uniform_index(samples)];
    }
    boot_vars[b] = mean_mode == MeanMode::Empirical
                       ? variance_about(resample, MeanMode::Empirical,
                                        mean_of(resample))
                       : variance_about(resample, MeanMode::Zero, 0.0);
  }
  const double boot_mean = mean_of(boot_vars);
  const double boot_sd = std::sqrt(
      variance_about(boot_vars, MeanMode::Empirical, boot_mean));

  VarianceRecord rec;
  rec.template_label = template_label;
  rec.n = n;
  rec.d_prime = d_prime;
  rec.layer_count = layer_count;
  rec.samples = samples;
  rec.seed = seed;
  rec.grad_mean = mean;
  rec.grad_mean_se =
      std::sqrt(var_about_mean / static_cast<double>(samples));
  rec.grad_var = var;
  rec.grad_var_se = boot_sd;
  rec.theory_var = corollary_variance(n, d_prime);
  rec.ratio = rec.grad_var / rec.theory_var;
  return rec;
}

namespace {

void validate_grid(const ExperimentConfig& config) {
  if (config.n_values.empty() || config.dim_values.empty() ||
      config.layer_values.empty()) {
    throw std::invalid_argument("sweep grid lists must be nonempty");
  }
  if (config.samples < 2) {
    throw std::invalid_argument("sweep needs samples >= 2");
  }
  ansatz_template(config.template_label);  // validates the label
}

}  // namespace

std::vector<std::string> detect_warnings(
    const std::vector<VarianceRecord>& records) {
  std::vector<std::string> warnings;
  char label_buf[160];
  for (const VarianceRecord& r : records) {
    if (std::abs(r.grad_mean) > 5.0 * r.grad_mean_se) {
      std::snprintf(label_buf, sizeof(label_buf),
                    "cell %c n=%d d'=%d L=%d: |grad_mean| = %.3g exceeds 5 x "
                    "SE = %.3g",
                    r.template_label, r.n, r.d_prime, r.layer_count,
                    std::abs(r.grad_mean), 5.0 * r.grad_mean_se);
      warnings.emplace_back(label_buf);
    }
  }
  // Monotonicity in d' within each (n, L) group, in record order.
  const VarianceRecord* prev = nullptr;
  for (const VarianceRecord& r : records) {
    if (prev != nullptr && prev->n == r.n &&
        prev->layer_count == r.layer_count && prev->d_prime < r.d_prime) {
      if (!(r.grad_var < prev->grad_var)) {
        std::snprintf(label_buf, sizeof(label_buf),
                      "cell %c n=%d L=%d: variance not decreasing from "
                      "d'=%d (%.6g) to d'=%d (%.6g)",
                      r.template_label, r.n, r.layer_count, prev->d_prime,
                      prev->grad_var, r.d_prime, r.grad_var);
        warnings.emplace_back(label_buf);
      }
    }
    prev = &r;
  }
  return warnings;
}

SweepResult sweep_dimension(const ExperimentConfig& config) {
  validate_grid(config);
  SweepResult result;
  result.records.reserve(config.n_values.size() * config.dim_values.size() *
                         config.layer_values.size());
  for (const int n : config.n_values) {
    for (const int layers : config.layer_values) {
      for (const int dp : config.dim_values) {
        result.records.push_back(estimate_variance_cell(
            config.template_label, n, dp, layers, config.samples,
            derive_seed(config.seed, cell_salt(n, dp, layers)),
            config.mean_mode, config.threads, config.param));
      }
    }
  }
  result.warnings = detect_warnings(result.records);
  return result;
}

SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& axis) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw std::invalid_argument("fit needs >= 3 (x, y) points");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) {
    throw std::invalid_argument("fit is degenerate: x values coincide");
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.axis = axis;
  double ss_res = 0.0, ss_tot = 0.0;
  const double y_mean = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fitted = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - fitted) * (ys[i] - fitted);
    ss_tot += (ys[i] - y_mean) * (ys[i] - y_mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  if (fit.r_squared < 0.0) fit.r_squared = 0.0;
  return fit;
}

QuditSweepResult sweep_qudits(const ExperimentConfig& config) {
  validate_grid(config);
  if (config.layer_values.size() != 1) {
    throw std::invalid_argument("sweep_qudits runs at one fixed layer count");
  }
  if (config.n_values.size() < 3) {
    throw std::invalid_argument("sweep_qudits needs >= 3 n values to fit");
  }
  const int layers = config.layer_values.front();
  QuditSweepResult result;
  for (const int dp : config.dim_values) {
    std::vector<double> xs, ys;
    for (const int n : config.n_values) {
      VarianceRecord rec = estimate_variance_cell(
          config.template_label, n, dp, layers, config.samples,
          derive_seed(config.seed, cell_salt(n, dp, layers)),
          config.mean_mode, config.threads, config.param);
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(rec.grad_var));
      result.records.push_back(rec);
    }
    result.fits.push_back(fit_line(xs, ys, "log-variance vs n"));
  }
  result.warnings = detect_warnings(result.records);
  return result;
}

DimensionFitResult loglog_dimension_fit(
    const std::vector<VarianceRecord>& records) {
  if (records.size() < 3) {
    throw std::invalid_argument(
        "loglog_dimension_fit needs >= 3 d' values");
  }
  std::vector<double> xs, ys;
  std::vector<int> dims;
  const int n = records.front().n;
  const int layers = records.front().layer_count;
  for (const VarianceRecord& r : records) {
    if (r.n != n || r.layer_count != layers) {
      throw std::invalid_argument(
          "loglog_dimension_fit records must share one (n, L) cell shape");
    }
    for (const int seen : dims) {
      if (seen == r.d_prime) {
        throw std::invalid_argument(
            "loglog_dimension_fit needs distinct d' values");
      }
    }
    dims.push_back(r.d_prime);
    xs.push_back(std::log(static_cast<double>(r.d_prime)));
    ys.push_back(std::log(r.grad_var));
  }
  DimensionFitResult result;
  result.fit = fit_line(xs, ys, "log-variance vs log-d'");
  result.reference_curve = amplification_curve(n, dims);
  return result;
}

std::string csv_string(const std::vector<VarianceRecord>& records) {
  std::string out =
      "template,n,d_prime,L,samples,seed,grad_mean,grad_mean_se,grad_var,"
      "grad_var_se,theory_var,ratio\n";
  for (const VarianceRecord& r : records) {
    out += r.template_label;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.d_prime);
    out += ',';
    out += std::to_string(r.layer_count);
    out += ',';
    out += std::to_string(r.samples);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    append_double(out, r.grad_mean);
    out += ',';
    append_double(out, r.grad_mean_se);
    out += ',';
    append_double(out, r.grad_var);
    out += ',';
    append_double(out, r.grad_var_se);
    out += ',';
    append_double(out, r.theory_var);
    out += ',';
    append_double(out, r.ratio);
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path,
               const std::vector<VarianceRecord>& records) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  file << csv_string(records);
  if (!file) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

namespace {

nlohmann::json record_to_json(const VarianceRecord& r) {
  nlohmann::json j;
  j["template"] = std::string(1, r.template_label);
  j["n"] = r.n;
  j["d_prime"] = r.d_prime;
  j["L"] = r.layer_count;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["grad_mean"] = r.grad_mean;
  j["grad_mean_se"] = r.grad_mean_se;
  j["grad_var"] = r.grad_var;
  j["grad_var_se"] = r.grad_var_se;
  j["theory_var"] = r.theory_var;
  j["ratio"] = r.ratio;
  return j;
}

}  // namespace

std::string json_string(const ExperimentConfig& config,
                        const SweepResult& result) {
  nlohmann::json doc;
  nlohmann::json cfg;
  cfg["template"] = std::string(1, config.template_label);
  cfg["n"] = config.n_values;
  cfg["dims"] = config.dim_values;
  cfg["layers"] = config.layer_values;
  cfg["samples"] = config.samples;
  cfg["seed"] = config.seed;
  cfg["mean_mode"] = mean_mode_name(config.mean_mode);
  cfg["param_qudit"] = config.param.qudit;
  cfg["param_layer"] = config.param.layer;
  doc["config"] = cfg;
  nlohmann::json records = nlohmann::json::array();
  for (const VarianceRecord& r : result.records) {
    records.push_back(record_to_json(r));
  }
  doc["records"] = records;
  doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

void write_json(const std::string& path, const ExperimentConfig& config,
                const SweepResult& result) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  file << json_string(config, result);
  if (!file) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

}  // namespace quditbp
