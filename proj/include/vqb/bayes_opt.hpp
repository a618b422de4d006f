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

// Bayesian-optimization loop: Sobol initialization, then repeated
// MLE-II refit, noisy-expected-improvement maximization, and measurement,
// with the incumbent tracked as the observed point of lowest posterior mean.

#ifndef VQB_BAYES_OPT_HPP_
#define VQB_BAYES_OPT_HPP_

#include <cstdint>

#include "vqb/gp.hpp"
#include "vqb/trace.hpp"

namespace vqb {

struct BoConfig {
  KernelKind kernel = KernelKind::kPeriodic;
  int n_init = 3;
  int k_nei = 20;
  int total_measurements = 80;
  int shots = 16;  // per measurement; informational, the objective owns it
  int dim = 6;
  std::uint64_t seed = 0;
  // Optional early stop: incumbent index unchanged and its energy moving
  // less than stability_tolerance for stability_window consecutive
  // iterations. Off by default; the studied budgets are fixed-length.
  bool stability_stop = false;
  int stability_window = 10;
  double stability_tolerance = 1e-3;
};

// Observed point with the lowest posterior mean; ties break to the lowest
// training index.
struct Incumbent {
  Eigen::VectorXd theta;
  double energy = 0.0;
  int index = 0;
};

Incumbent current_best(const GpModel& model);

// Runs the full loop until total_measurements objective calls have been
// made (or the stability stop fires). Rows before the first model fit (the
// first n_init - 1 measurements) report the raw minimum as incumbent; from
// the completed initial design onward the model is refit after every
// measurement and the incumbent is posterior-mean based. An objective
// failure ends the run early with the partial trace preserved.
OptimizationTrace run_bo(const BoConfig& cfg, const ObjectiveFn& objective,
                         const DiagnosticsFn& diagnostics, Rng& rng);

}  // namespace vqb

#endif  // VQB_BAYES_OPT_HPP_
