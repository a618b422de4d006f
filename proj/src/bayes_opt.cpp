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

#include "vqb/bayes_opt.hpp"

#include <cmath>
#include <stdexcept>

#include "vqb/acquisition.hpp"
#include "vqb/sobol.hpp"

namespace vqb {

namespace {

void validate_config(const BoConfig& cfg) {
  if (cfg.n_init < 1) {
    throw std::invalid_argument("BoConfig: n_init must be >= 1");
  }
  if (cfg.total_measurements < cfg.n_init) {
    throw std::invalid_argument(
        "BoConfig: total_measurements must be >= n_init");
  }
  if (cfg.shots < 2) {
    throw std::invalid_argument("BoConfig: shots must be >= 2");
  }
  if (cfg.dim < 1) {
    throw std::invalid_argument("BoConfig: dim must be >= 1");
  }
  if (cfg.k_nei < 1) {
    throw std::invalid_argument("BoConfig: k_nei must be >= 1");
  }
  if (cfg.stability_stop && cfg.stability_window < 1) {
    throw std::invalid_argument("BoConfig: stability_window must be >= 1");
  }
}

Diagnostics run_diagnostics(const DiagnosticsFn& diagnostics,
                            const Eigen::VectorXd& theta) {
  if (!diagnostics) {
    return {std::nan(""), std::nan("")};
  }
  return diagnostics(theta);
}

TraceRow make_row(int iteration, long long cumulative_shots,
                  const MeasurementRecord& rec, const Eigen::VectorXd& theta_min,
                  double best_energy, const DiagnosticsFn& diagnostics) {
  TraceRow row;
  row.iteration = iteration;
  row.cumulative_shots = cumulative_shots;
  row.theta_min = theta_min;
  row.best_energy_model = best_energy;
  row.energy_estimate = rec.energy;
  row.energy_stderr = rec.std_error;
  const Diagnostics diag = run_diagnostics(diagnostics, theta_min);
  row.true_energy = diag.true_energy;
  row.fidelity = diag.fidelity;
  return row;
}

// Raw-data incumbent used before the first model exists.
void raw_incumbent(const std::vector<MeasurementRecord>& records,
                   Eigen::VectorXd* theta, double* energy) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].energy < records[best].energy) best = i;
  }
  *theta = records[best].theta;
  *energy = records[best].energy;
}

}  // namespace

Incumbent current_best(const GpModel& model) {
  if (model.training.empty()) {
    throw std::invalid_argument("current_best: model has no training data");
  }
  Incumbent best;
  best.index = 0;
  best.theta = model.training[0].theta;
  best.energy = posterior_point(model, model.training[0].theta).mean;
  for (std::size_t i = 1; i < model.training.size(); ++i) {
    const double mean = posterior_point(model, model.training[i].theta).mean;
    if (mean < best.energy) {
      best.energy = mean;
      best.index = static_cast<int>(i);
      best.theta = model.training[i].theta;
    }
  }
  return best;
}

OptimizationTrace run_bo(const BoConfig& cfg, const ObjectiveFn& objective,
                         const DiagnosticsFn& diagnostics, Rng& rng) {
  validate_config(cfg);
  OptimizationTrace trace;
  std::vector<MeasurementRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.total_measurements));
  long long cumulative_shots = 0;

  const auto measure = [&](const Eigen::VectorXd& theta) {
    MeasurementRecord rec = objective(theta);
    cumulative_shots += rec.shots;
    records.push_back(rec);
    return rec;
  };

  // MLE-II refit on everything measured so far. A single record cannot
  // support MLE-II, so the heuristic prior stands in for that corner.
  const auto refit = [&]() {
    if (records.size() < 2) {
      return fit(cfg.kernel, heuristic_hyperparameters(records), records);
    }
    const Mle2Result mle = mle2_fit(cfg.kernel, records);
    trace.mle_fallback_used = trace.mle_fallback_used || mle.used_fallback;
    return fit(cfg.kernel, mle.hyper, records);
  };

  const std::vector<Eigen::VectorXd> init =
      sobol_points(cfg.n_init, cfg.dim, cfg.seed);

  GpModel model;
  Incumbent incumbent;
  int stable_count = 0;
  int prev_index = -1;
  double prev_energy = 0.0;

  try {
    // Initial design. The model first exists once all n_init points are in;
    // earlier rows report the raw minimum.
    for (int i = 0; i < cfg.n_init; ++i) {
      const MeasurementRecord rec = measure(init[static_cast<std::size_t>(i)]);
      const int iteration = static_cast<int>(records.size());
      if (iteration < cfg.n_init) {
        Eigen::VectorXd theta;
        double energy = 0.0;
        raw_incumbent(records, &theta, &energy);
        trace.rows.push_back(make_row(iteration, cumulative_shots, rec, theta,
                                      energy, diagnostics));
      } else {
        model = refit();
        incumbent = current_best(model);
        trace.rows.push_back(make_row(iteration, cumulative_shots, rec,
                                      incumbent.theta, incumbent.energy,
                                      diagnostics));
      }
    }

    while (static_cast<int>(records.size()) < cfg.total_measurements) {
      const NeiEnsemble ensemble = build_nei_ensemble(model, cfg.k_nei, rng);
      const AcquisitionFn nei = [&ensemble](const Eigen::VectorXd& theta) {
        return noisy_expected_improvement(ensemble, theta);
      };
      const Eigen::VectorXd proposal = maximize_acquisition(nei, cfg.dim, rng);
      const MeasurementRecord rec = measure(proposal);
      model = refit();
      incumbent = current_best(model);
      trace.rows.push_back(make_row(static_cast<int>(records.size()),
                                    cumulative_shots, rec, incumbent.theta,
                                    incumbent.energy, diagnostics));

      if (cfg.stability_stop) {
        if (incumbent.index == prev_index &&
            std::abs(incumbent.energy - prev_energy) <
                cfg.stability_tolerance) {
          ++stable_count;
        } else {
          stable_count = 0;
        }
        prev_index = incumbent.index;
        prev_energy = incumbent.energy;
        if (stable_count >= cfg.stability_window) break;
      }
    }
  } catch (const std::exception& e) {
    trace.completed = false;
    trace.error = e.what();
  }

  if (!trace.rows.empty()) {
    trace.theta_min = trace.rows.back().theta_min;
    trace.best_energy = trace.rows.back().best_energy_model;
  }
  return trace;
}

}  // namespace vqb
