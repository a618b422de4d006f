// Copyright 2026 The vqe-bayes authors.
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

#include "vqb/baselines.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFlatAmplitude = 1e-12;

double wrap_angle(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  return phi;
}

// Uses cfg.initial when given (validated against dim), otherwise draws a
// uniform point in [0, 2pi]^dim.
Eigen::VectorXd resolve_start(const Eigen::VectorXd& initial, int dim,
                              Rng& rng) {
  if (initial.size() != 0) {
    if (initial.size() != dim) {
      throw std::invalid_argument(
          "initial point dimension does not match dim");
    }
    if (!initial.allFinite()) {
      throw std::invalid_argument("initial point must be finite");
    }
    return initial;
  }
  Eigen::VectorXd theta(dim);
  for (int i = 0; i < dim; ++i) theta(i) = rng.uniform(0.0, kTwoPi);
  return theta;
}

Diagnostics run_diagnostics(const DiagnosticsFn& diagnostics,
                            const Eigen::VectorXd& theta) {
  if (!diagnostics) {
    return {std::nan(""), std::nan("")};
  }
  return diagnostics(theta);
}

void push_row(OptimizationTrace& trace, long long cumulative_shots,
              const MeasurementRecord& rec, const Eigen::VectorXd& theta_min,
              double best_energy, const DiagnosticsFn& diagnostics) {
  TraceRow row;
  row.iteration = static_cast<int>(trace.rows.size()) + 1;
  row.cumulative_shots = cumulative_shots;
  row.theta_min = theta_min;
  row.best_energy_model = best_energy;
  row.energy_estimate = rec.energy;
  row.energy_stderr = rec.std_error;
  const Diagnostics diag = run_diagnostics(diagnostics, theta_min);
  row.true_energy = diag.true_energy;
  row.fidelity = diag.fidelity;
  trace.rows.push_back(std::move(row));
}

void finalize(OptimizationTrace& trace) {
  if (!trace.rows.empty()) {
    trace.theta_min = trace.rows.back().theta_min;
    trace.best_energy = trace.rows.back().best_energy_model;
  }
}

void validate_spsa(const SpsaConfig& cfg) {
  if (!(cfg.c > 0.0)) {
    throw std::invalid_argument("SpsaConfig: c must be positive");
  }
  if (!std::isfinite(cfg.a)) {
    throw std::invalid_argument("SpsaConfig: a must be finite");
  }
  if (!(cfg.alpha_exp > 0.0 && cfg.alpha_exp <= 1.0) ||
      !(cfg.gamma_exp > 0.0 && cfg.gamma_exp <= 1.0)) {
    throw std::invalid_argument("SpsaConfig: exponents must be in (0, 1]");
  }
  if (cfg.iterations < 1) {
    throw std::invalid_argument("SpsaConfig: iterations must be >= 1");
  }
  if (!(cfg.first_step > 0.0)) {
    throw std::invalid_argument("SpsaConfig: first_step must be positive");
  }
}

}  // namespace

SinusoidFit nft_sinusoid_fit(double e0, double e_plus, double e_minus,
                             double phi0) {
  SinusoidFit fitres;
  fitres.offset = 0.5 * (e_plus + e_minus);
  const double x = e0 - fitres.offset;
  const double y = 0.5 * (e_minus - e_plus);
  fitres.amplitude = std::hypot(x, y);
  if (fitres.amplitude < kFlatAmplitude) {
    fitres.phase = phi0;
    fitres.argmin = phi0;
    return fitres;
  }
  fitres.phase = phi0 - std::atan2(y, x);
  fitres.argmin = fitres.phase + std::numbers::pi;
  return fitres;
}

OptimizationTrace run_spsa(const SpsaConfig& cfg, const ObjectiveFn& objective,
                           int dim, const DiagnosticsFn& diagnostics,
                           Rng& rng) {
  validate_spsa(cfg);
  if (dim < 1) {
    throw std::invalid_argument("run_spsa: dim must be >= 1");
  }
  OptimizationTrace trace;
  Eigen::VectorXd theta = resolve_start(cfg.initial, dim, rng);
  const double big_a =
      (cfg.big_a < 0.0) ? 0.1 * cfg.iterations : cfg.big_a;
  double gain_a = cfg.a;
  long long cumulative_shots = 0;
  double pair_mean = 0.0;
  bool have_pair_mean = false;

  try {
    for (int k = 0; k < cfg.iterations; ++k) {
      const double ck = cfg.c / std::pow(k + 1.0, cfg.gamma_exp);
      Eigen::VectorXd delta(dim);
      for (int i = 0; i < dim; ++i) delta(i) = rng.bernoulli(0.5) ? 1.0 : -1.0;

      const MeasurementRecord plus = objective(theta + ck * delta);
      cumulative_shots += plus.shots;
      push_row(trace, cumulative_shots, plus, theta,
               have_pair_mean ? pair_mean : plus.energy, diagnostics);

      const MeasurementRecord minus = objective(theta - ck * delta);
      cumulative_shots += minus.shots;

      const double g_scalar = (plus.energy - minus.energy) / (2.0 * ck);
      if (k == 0 && gain_a < 0.0) {
        // Calibrate so the first update moves each coordinate by about
        // first_step radians, reusing this iteration's own probes.
        const double magnitude = std::abs(g_scalar);
        gain_a = (magnitude < 1e-9)
                     ? cfg.first_step
                     : cfg.first_step * std::pow(1.0 + big_a, cfg.alpha_exp) /
                           magnitude;
      }
      const double ak = gain_a / std::pow(k + 1.0 + big_a, cfg.alpha_exp);
      theta -= (ak * g_scalar) * delta;

      pair_mean = 0.5 * (plus.energy + minus.energy);
      have_pair_mean = true;
      push_row(trace, cumulative_shots, minus, theta, pair_mean, diagnostics);
    }
  } catch (const std::exception& e) {
    trace.completed = false;
    trace.error = e.what();
  }
  finalize(trace);
  return trace;
}

OptimizationTrace run_nft(const NftConfig& cfg, const ObjectiveFn& objective,
                          int dim, const DiagnosticsFn& diagnostics,
                          Rng& rng) {
  if (cfg.reset_interval < 1) {
    throw std::invalid_argument("NftConfig: reset_interval must be >= 1");
  }
  if (cfg.measurements < 3) {
    throw std::invalid_argument("NftConfig: need at least 3 measurements");
  }
  if (dim < 1) {
    throw std::invalid_argument("run_nft: dim must be >= 1");
  }

  OptimizationTrace trace;
  Eigen::VectorXd theta = resolve_start(cfg.initial, dim, rng);
  for (int i = 0; i < dim; ++i) theta(i) = wrap_angle(theta(i));
  long long cumulative_shots = 0;
  int used = 0;
  int steps_done = 0;
  double e0 = 0.0;

  const auto measure_center = [&]() {
    const MeasurementRecord rec = objective(theta);
    cumulative_shots += rec.shots;
    ++used;
    e0 = rec.energy;
    push_row(trace, cumulative_shots, rec, theta, e0, diagnostics);
  };

  try {
    measure_center();  // the k = 0 reset
    while (used < cfg.measurements) {
      const int remaining = cfg.measurements - used;
      const int k = steps_done;
      const bool reset_due = (k > 0) && (k % cfg.reset_interval == 0);
      if (remaining == 1 || (reset_due && remaining < 3)) {
        // Tail too short for (reset plus) a two-probe step.
        measure_center();
        continue;
      }
      if (reset_due) measure_center();

      const int alpha = k % dim;
      const double phi0 = theta(alpha);

      Eigen::VectorXd probe = theta;
      probe(alpha) = phi0 + std::numbers::pi / 2.0;
      const MeasurementRecord plus = objective(probe);
      cumulative_shots += plus.shots;
      ++used;
      push_row(trace, cumulative_shots, plus, theta, e0, diagnostics);

      probe(alpha) = phi0 - std::numbers::pi / 2.0;
      const MeasurementRecord minus = objective(probe);
      cumulative_shots += minus.shots;
      ++used;

      const SinusoidFit fitres =
          nft_sinusoid_fit(e0, plus.energy, minus.energy, phi0);
      if (fitres.amplitude >= kFlatAmplitude) {
        theta(alpha) = wrap_angle(fitres.argmin);
      }
      // Propagated center energy: the fitted minimum value.
      e0 = fitres.offset - fitres.amplitude;
      ++steps_done;
      push_row(trace, cumulative_shots, minus, theta, e0, diagnostics);
    }
  } catch (const std::exception& e) {
    trace.completed = false;
    trace.error = e.what();
  }
  finalize(trace);
  return trace;
}

}  // namespace vqb
