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

// Experiment runner for the two-qubit transverse-field Ising study:
// repeated optimizer runs under a fixed shot budget, CSV and summary
// emission, cross-run aggregation, and a hand-rolled SVG comparison plot.

#ifndef VQB_HARNESS_HPP_
#define VQB_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vqb/circuit.hpp"
#include "vqb/trace.hpp"

namespace vqb {

enum class OptimizerKind { kBoRbf, kBoPeriodic, kSpsa, kNft };

std::string optimizer_name(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& name);

struct ExperimentConfig {
  OptimizerKind optimizer = OptimizerKind::kBoPeriodic;
  int measurements = 80;
  int shots = 16;
  int runs = 20;
  std::uint64_t seed = 7;
  NoiseConfig noise;
  std::string noise_label = "off";
  std::string label;    // defaults to the optimizer name when empty
  std::string out_dir;  // when set, run_experiment writes csv/summary/svg here
};

struct RunResult {
  int run_id = 0;  // run r uses seed cfg.seed + r
  OptimizationTrace trace;
};

struct AggregateRow {
  int iteration = 0;
  long long cumulative_shots = 0;
  double mean_energy = 0.0;  // of the per-run model-best energies
  double se_energy = 0.0;
  double mean_fidelity = 0.0;
  double se_fidelity = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunResult> runs;
  std::vector<AggregateRow> aggregate;  // over completed runs
  int completed_runs = 0;
  bool se_defined = false;  // false for a single run; SEs emitted as 0
  long long total_shots_per_run = 0;
  double mean_final_energy = 0.0;
  double se_final_energy = 0.0;
  double mean_final_fidelity = 0.0;
  double median_final_fidelity = 0.0;
};

// Runs cfg.runs independent repetitions with seeds seed+1..seed+runs,
// parallelized up to the VQE_BAYES_THREADS cap (0 or unset picks the
// hardware concurrency). Warns on stderr when measurements * shots differs
// from the studied 1280-shot budget and when runs fail.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV schema (LF line endings, 9-significant-digit floats):
// run_id,iteration,cumulative_shots,energy_estimate,energy_stderr,
// best_energy_model,true_energy,fidelity
std::string csv_text(const ExperimentResult& result);
void emit_csv(const ExperimentResult& result, const std::string& path);

struct CsvRow {
  int run_id = 0;
  int iteration = 0;
  long long cumulative_shots = 0;
  double energy_estimate = 0.0;
  double energy_stderr = 0.0;
  double best_energy_model = 0.0;
  double true_energy = 0.0;
  double fidelity = 0.0;
};

std::vector<CsvRow> parse_csv(std::istream& in);
std::vector<CsvRow> parse_csv_file(const std::string& path);

// Mean and standard error across runs at each common iteration index.
std::vector<AggregateRow> aggregate_rows(const std::vector<CsvRow>& rows);

struct PlotSeries {
  std::string label;
  std::vector<AggregateRow> rows;
};

// Two panels (model-best energy and fidelity versus cumulative shots) with
// standard-error bands and reference lines at the exact ground energy and
// at fidelity 1. The energy reference comes from diagonalization at render
// time.
std::string render_plot_svg(const std::vector<PlotSeries>& series);
void emit_plot(const std::vector<PlotSeries>& series, const std::string& path);

std::string summary_text(const ExperimentResult& result);
void emit_summary(const ExperimentResult& result, const std::string& path);

double median(std::vector<double> values);

// Resolves the VQE_BAYES_THREADS cap: 0 or unset means hardware
// concurrency; never more than runs, never less than 1.
int thread_budget(int runs);

}  // namespace vqb

#endif  // VQB_HARNESS_HPP_
