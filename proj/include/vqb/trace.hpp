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

// Trace schema shared by every optimizer: one row per energy measurement,
// carrying the raw estimate, the optimizer's current best guess, and
// side-channel diagnostics that are never fed back into decisions.

#ifndef VQB_TRACE_HPP_
#define VQB_TRACE_HPP_

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "vqb/shots.hpp"

namespace vqb {

struct TraceRow {
  int iteration = 0;               // 1-based measurement index
  long long cumulative_shots = 0;
  Eigen::VectorXd theta_min;       // incumbent after this measurement
  double best_energy_model = 0.0;  // optimizer's energy estimate at theta_min
  double energy_estimate = 0.0;    // raw estimate of this measurement
  double energy_stderr = 0.0;
  double true_energy = 0.0;        // noiseless energy at theta_min
  double fidelity = 0.0;           // state overlap with the target at theta_min
};

struct OptimizationTrace {
  std::vector<TraceRow> rows;
  Eigen::VectorXd theta_min;  // final incumbent
  double best_energy = 0.0;   // final incumbent energy estimate
  bool completed = true;      // false when the objective failed mid-run
  bool mle_fallback_used = false;
  std::string error;
};

// One noisy energy measurement at theta.
using ObjectiveFn = std::function<MeasurementRecord(const Eigen::VectorXd&)>;

// Exact diagnostics at an incumbent, computed on the side by the harness.
struct Diagnostics {
  double true_energy = 0.0;
  double fidelity = 0.0;
};

using DiagnosticsFn = std::function<Diagnostics(const Eigen::VectorXd&)>;

}  // namespace vqb

#endif  // VQB_TRACE_HPP_
