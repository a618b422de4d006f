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

#include "vqb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vqb/baselines.hpp"
#include "vqb/bayes_opt.hpp"
#include "vqb/pauli.hpp"
#include "vqb/shots.hpp"

namespace vqb {

namespace {

constexpr long long kStudyBudget = 1280;  // shots per run in the study

std::string fmt_g(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) {
    throw std::invalid_argument("ExperimentConfig: runs must be >= 1");
  }
  if (cfg.shots < 2) {
    throw std::invalid_argument("ExperimentConfig: shots must be >= 2");
  }
  validate_noise(cfg.noise);
  switch (cfg.optimizer) {
    case OptimizerKind::kBoRbf:
    case OptimizerKind::kBoPeriodic:
      if (cfg.measurements < 3) {
        throw std::invalid_argument(
            "ExperimentConfig: BO needs at least 3 measurements (the initial design)");
      }
      break;
    case OptimizerKind::kSpsa:
      if (cfg.measurements < 2 || cfg.measurements % 2 != 0) {
        throw std::invalid_argument(
            "ExperimentConfig: SPSA needs an even measurement budget (2 per iteration)");
      }
      break;
    case OptimizerKind::kNft:
      if (cfg.measurements < 3) {
        throw std::invalid_argument(
            "ExperimentConfig: NFT needs at least 3 measurements");
      }
      break;
  }
}

RunResult run_single(const ExperimentConfig& cfg,
                     const PauliSumHamiltonian& hamiltonian,
                     const SpectralResult& spectrum, int run_id) {
  RunResult result;
  result.run_id = run_id;
  Rng rng(cfg.seed + static_cast<std::uint64_t>(run_id));

  const ObjectiveFn objective = [&](const Eigen::VectorXd& theta) {
    return measure_energy(theta, cfg.shots, hamiltonian, cfg.noise, rng);
  };
  const DiagnosticsFn diagnostics = [&](const Eigen::VectorXd& theta) {
    const Statevector psi = apply_circuit(theta);
    return Diagnostics{expectation_exact(psi, hamiltonian),
                       fidelity(psi, spectrum.ground_state)};
  };

  switch (cfg.optimizer) {
    case OptimizerKind::kBoRbf:
    case OptimizerKind::kBoPeriodic: {
      BoConfig bo;
      bo.kernel = (cfg.optimizer == OptimizerKind::kBoRbf)
                      ? KernelKind::kRbf
                      : KernelKind::kPeriodic;
      bo.total_measurements = cfg.measurements;
      bo.shots = cfg.shots;
      bo.dim = kParameterCount;
      bo.seed = cfg.seed + static_cast<std::uint64_t>(run_id);
      result.trace = run_bo(bo, objective, diagnostics, rng);
      break;
    }
    case OptimizerKind::kSpsa: {
      SpsaConfig spsa;
      spsa.iterations = cfg.measurements / 2;
      result.trace =
          run_spsa(spsa, objective, kParameterCount, diagnostics, rng);
      break;
    }
    case OptimizerKind::kNft: {
      NftConfig nft;
      nft.measurements = cfg.measurements;
      result.trace =
          run_nft(nft, objective, kParameterCount, diagnostics, rng);
      break;
    }
  }
  return result;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(n);
  if (n < 2) return out;  // SE undefined for one sample; reported as 0
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(n - 1)) /
           std::sqrt(static_cast<double>(n));
  return out;
}

std::vector<AggregateRow> aggregate_from_traces(
    const std::vector<const OptimizationTrace*>& traces) {
  std::vector<AggregateRow> out;
  if (traces.empty()) return out;
  std::size_t common = traces[0]->rows.size();
  for (const OptimizationTrace* t : traces) {
    common = std::min(common, t->rows.size());
  }
  out.reserve(common);
  for (std::size_t i = 0; i < common; ++i) {
    AggregateRow agg;
    agg.iteration = traces[0]->rows[i].iteration;
    agg.cumulative_shots = traces[0]->rows[i].cumulative_shots;
    std::vector<double> energies;
    std::vector<double> fidelities;
    energies.reserve(traces.size());
    fidelities.reserve(traces.size());
    for (const OptimizationTrace* t : traces) {
      if (t->rows[i].cumulative_shots != agg.cumulative_shots) {
        throw std::logic_error(
            "aggregate: traces disagree on cumulative shots at a common index");
      }
      energies.push_back(t->rows[i].best_energy_model);
      fidelities.push_back(t->rows[i].fidelity);
    }
    const MeanSe e = mean_se(energies);
    const MeanSe f = mean_se(fidelities);
    agg.mean_energy = e.mean;
    agg.se_energy = e.se;
    agg.mean_fidelity = f.mean;
    agg.se_fidelity = f.se;
    out.push_back(agg);
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  std::vector<double> ticks;
  const double span = hi - lo;
  if (!(span > 0.0)) {
    ticks.push_back(lo);
    return ticks;
  }
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step = 10.0 * mag;
  if (norm < 1.5) {
    step = mag;
  } else if (norm < 3.5) {
    step = 2.0 * mag;
  } else if (norm < 7.5) {
    step = 5.0 * mag;
  }
  double v = std::ceil(lo / step) * step;
  while (v <= hi + 1e-9 * span) {
    ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    v += step;
  }
  return ticks;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

struct PanelFrame {
  double x0, y0, x1, y1;  // plot area in pixels, y grows downward
};

// One panel: axes, ticks, dashed reference line, per-series SE band and
// mean polyline.
void draw_panel(std::ostringstream& svg, const PanelFrame& frame,
                const std::string& title, const std::string& y_label,
                const std::vector<PlotSeries>& series, bool use_fidelity,
                double reference) {
  double x_hi = 1.0;
  double y_lo = reference;
  double y_hi = reference;
  bool have_data = false;
  for (const PlotSeries& s : series) {
    for (const AggregateRow& row : s.rows) {
      const double m = use_fidelity ? row.mean_fidelity : row.mean_energy;
      const double se = use_fidelity ? row.se_fidelity : row.se_energy;
      x_hi = std::max(x_hi, static_cast<double>(row.cumulative_shots));
      y_lo = have_data ? std::min(y_lo, m - se) : std::min(reference, m - se);
      y_hi = have_data ? std::max(y_hi, m + se) : std::max(reference, m + se);
      have_data = true;
    }
  }
  if (!have_data) {
    y_lo = reference - 1.0;
    y_hi = reference + 1.0;
  }
  const double pad = 0.06 * std::max(y_hi - y_lo, 1e-9);
  y_lo -= pad;
  y_hi += pad;

  const auto sx = [&](double v) {
    return frame.x0 + (v / x_hi) * (frame.x1 - frame.x0);
  };
  const auto sy = [&](double v) {
    return frame.y1 - (v - y_lo) / (y_hi - y_lo) * (frame.y1 - frame.y0);
  };

  svg << "<text x=\"" << 0.5 * (frame.x0 + frame.x1) << "\" y=\""
      << frame.y0 - 12 << "\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";

  // Axes.
  svg << "<line x1=\"" << frame.x0 << "\" y1=\"" << frame.y1 << "\" x2=\""
      << frame.x1 << "\" y2=\"" << frame.y1
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << frame.x0 << "\" y1=\"" << frame.y0 << "\" x2=\""
      << frame.x0 << "\" y2=\"" << frame.y1
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (double t : nice_ticks(0.0, x_hi, 5)) {
    const double px = sx(t);
    svg << "<line x1=\"" << px << "\" y1=\"" << frame.y1 << "\" x2=\"" << px
        << "\" y2=\"" << frame.y1 + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << frame.y1 + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_g(t)
        << "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi, 5)) {
    const double py = sy(t);
    svg << "<line x1=\"" << frame.x0 - 5 << "\" y1=\"" << py << "\" x2=\""
        << frame.x0 << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << frame.x0 - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_g(t)
        << "</text>\n";
  }
  svg << "<text x=\"" << 0.5 * (frame.x0 + frame.x1) << "\" y=\""
      << frame.y1 + 34 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << "cumulative shots</text>\n";
  svg << "<text x=\"" << frame.x0 - 46 << "\" y=\""
      << 0.5 * (frame.y0 + frame.y1) << "\" text-anchor=\"middle\" "
      << "font-size=\"12\" transform=\"rotate(-90 " << frame.x0 - 46 << " "
      << 0.5 * (frame.y0 + frame.y1) << ")\">" << xml_escape(y_label)
      << "</text>\n";

  // Exact-solution reference.
  if (reference >= y_lo && reference <= y_hi) {
    svg << "<line x1=\"" << frame.x0 << "\" y1=\"" << sy(reference)
        << "\" x2=\"" << frame.x1 << "\" y2=\"" << sy(reference)
        << "\" stroke=\"black\" stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].rows.empty()) continue;
    const char* color = kPalette[s % kPaletteSize];
    std::ostringstream band;
    std::ostringstream line;
    for (const AggregateRow& row : series[s].rows) {
      const double m = use_fidelity ? row.mean_fidelity : row.mean_energy;
      const double se = use_fidelity ? row.se_fidelity : row.se_energy;
      band << sx(static_cast<double>(row.cumulative_shots)) << ","
           << sy(m + se) << " ";
      line << sx(static_cast<double>(row.cumulative_shots)) << "," << sy(m)
           << " ";
    }
    for (auto it = series[s].rows.rbegin(); it != series[s].rows.rend(); ++it) {
      const double m = use_fidelity ? it->mean_fidelity : it->mean_energy;
      const double se = use_fidelity ? it->se_fidelity : it->se_energy;
      band << sx(static_cast<double>(it->cumulative_shots)) << ","
           << sy(m - se) << " ";
    }
    svg << "<polygon points=\"" << band.str() << "\" fill=\"" << color
        << "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
    svg << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.8\"/>\n";
  }
}

}  // namespace

std::string optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kBoRbf: return "bo-rbf";
    case OptimizerKind::kBoPeriodic: return "bo-periodic";
    case OptimizerKind::kSpsa: return "spsa";
    case OptimizerKind::kNft: return "nft";
  }
  return "unknown";
}

OptimizerKind parse_optimizer(const std::string& name) {
  if (name == "bo-rbf") return OptimizerKind::kBoRbf;
  if (name == "bo-periodic") return OptimizerKind::kBoPeriodic;
  if (name == "spsa") return OptimizerKind::kSpsa;
  if (name == "nft") return OptimizerKind::kNft;
  throw std::invalid_argument(
      "unknown optimizer '" + name +
      "' (expected bo-rbf, bo-periodic, spsa, or nft)");
}

int thread_budget(int runs) {
  int cap = 0;
  if (const char* env = std::getenv("VQE_BAYES_THREADS")) {
    if (*env != '\0') {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || parsed < 0) {
        throw std::invalid_argument(
            "VQE_BAYES_THREADS must be a nonnegative integer");
      }
      cap = static_cast<int>(parsed);
    }
  }
  if (cap == 0) {
    cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
  }
  return std::max(1, std::min(cap, runs));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  ExperimentResult result;
  result.config = cfg;
  if (result.config.label.empty()) {
    result.config.label = optimizer_name(cfg.optimizer);
  }
  const long long budget =
      static_cast<long long>(cfg.measurements) * cfg.shots;
  if (budget != kStudyBudget) {
    std::cerr << "warning: measurements * shots = " << budget
              << " differs from the studied budget of " << kStudyBudget
              << " shots\n";
  }

  const PauliSumHamiltonian hamiltonian = ising_hamiltonian();
  const SpectralResult spectrum = ground_state(hamiltonian);

  result.runs.resize(static_cast<std::size_t>(cfg.runs));
  const int workers = thread_budget(cfg.runs);
  std::atomic<int> next{1};
  const auto worker = [&]() {
    for (int run_id = next.fetch_add(1); run_id <= cfg.runs;
         run_id = next.fetch_add(1)) {
      try {
        result.runs[static_cast<std::size_t>(run_id - 1)] =
            run_single(cfg, hamiltonian, spectrum, run_id);
      } catch (const std::exception& e) {
        RunResult failed;
        failed.run_id = run_id;
        failed.trace.completed = false;
        failed.trace.error = e.what();
        result.runs[static_cast<std::size_t>(run_id - 1)] = std::move(failed);
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<const OptimizationTrace*> completed;
  for (const RunResult& run : result.runs) {
    if (run.trace.completed && !run.trace.rows.empty()) {
      completed.push_back(&run.trace);
    } else {
      std::cerr << "warning: run " << run.run_id
                << " failed: " << run.trace.error << "\n";
    }
  }
  result.completed_runs = static_cast<int>(completed.size());
  result.se_defined = result.completed_runs > 1;
  result.aggregate = aggregate_from_traces(completed);

  if (!completed.empty()) {
    result.total_shots_per_run = completed[0]->rows.back().cumulative_shots;
    std::vector<double> final_energy;
    std::vector<double> final_fidelity;
    for (const OptimizationTrace* t : completed) {
      if (t->rows.back().cumulative_shots != result.total_shots_per_run) {
        throw std::logic_error(
            "run_experiment: completed runs consumed unequal shot budgets");
      }
      final_energy.push_back(t->rows.back().best_energy_model);
      final_fidelity.push_back(t->rows.back().fidelity);
    }
    const MeanSe e = mean_se(final_energy);
    result.mean_final_energy = e.mean;
    result.se_final_energy = e.se;
    result.mean_final_fidelity = mean_se(final_fidelity).mean;
    result.median_final_fidelity = median(final_fidelity);
  }

  if (!result.config.out_dir.empty()) {
    std::filesystem::create_directories(result.config.out_dir);
    const std::string base =
        (std::filesystem::path(result.config.out_dir) / result.config.label)
            .string();
    emit_csv(result, base + ".csv");
    emit_summary(result, base + "-summary.txt");
    emit_plot({{result.config.label, result.aggregate}}, base + ".svg");
  }
  return result;
}

std::string csv_text(const ExperimentResult& result) {
  std::string out =
      "run_id,iteration,cumulative_shots,energy_estimate,energy_stderr,"
      "best_energy_model,true_energy,fidelity\n";
  for (const RunResult& run : result.runs) {
    for (const TraceRow& row : run.trace.rows) {
      out += std::to_string(run.run_id);
      out += ',';
      out += std::to_string(row.iteration);
      out += ',';
      out += std::to_string(row.cumulative_shots);
      out += ',';
      out += fmt_g(row.energy_estimate);
      out += ',';
      out += fmt_g(row.energy_stderr);
      out += ',';
      out += fmt_g(row.best_energy_model);
      out += ',';
      out += fmt_g(row.true_energy);
      out += ',';
      out += fmt_g(row.fidelity);
      out += '\n';
    }
  }
  return out;
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << csv_text(result);
  if (!out.good()) throw std::runtime_error("emit_csv: write failed: " + path);
}

std::vector<CsvRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("parse_csv: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected =
      "run_id,iteration,cumulative_shots,energy_estimate,energy_stderr,"
      "best_energy_model,true_energy,fidelity";
  if (line != expected) {
    throw std::invalid_argument("parse_csv: unexpected header: " + line);
  }
  std::vector<CsvRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    CsvRow row;
    const int got = std::sscanf(
        line.c_str(), "%d,%d,%lld,%lf,%lf,%lf,%lf,%lf", &row.run_id,
        &row.iteration, &row.cumulative_shots, &row.energy_estimate,
        &row.energy_stderr, &row.best_energy_model, &row.true_energy,
        &row.fidelity);
    if (got != 8) {
      throw std::invalid_argument("parse_csv: malformed row on line " +
                                  std::to_string(line_number));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CsvRow> parse_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("parse_csv_file: cannot open " + path);
  return parse_csv(in);
}

std::vector<AggregateRow> aggregate_rows(const std::vector<CsvRow>& rows) {
  std::vector<int> run_ids;
  for (const CsvRow& row : rows) {
    if (std::find(run_ids.begin(), run_ids.end(), row.run_id) ==
        run_ids.end()) {
      run_ids.push_back(row.run_id);
    }
  }
  std::vector<std::vector<const CsvRow*>> per_run(run_ids.size());
  for (const CsvRow& row : rows) {
    const std::size_t idx = static_cast<std::size_t>(
        std::find(run_ids.begin(), run_ids.end(), row.run_id) -
        run_ids.begin());
    per_run[idx].push_back(&row);
  }
  std::vector<AggregateRow> out;
  if (per_run.empty()) return out;
  std::size_t common = per_run[0].size();
  for (const auto& r : per_run) common = std::min(common, r.size());
  for (std::size_t i = 0; i < common; ++i) {
    AggregateRow agg;
    agg.iteration = per_run[0][i]->iteration;
    agg.cumulative_shots = per_run[0][i]->cumulative_shots;
    std::vector<double> energies;
    std::vector<double> fidelities;
    for (const auto& r : per_run) {
      if (r[i]->cumulative_shots != agg.cumulative_shots) {
        throw std::invalid_argument(
            "aggregate_rows: runs disagree on cumulative shots; the file mixes "
            "incompatible setups");
      }
      energies.push_back(r[i]->best_energy_model);
      fidelities.push_back(r[i]->fidelity);
    }
    const MeanSe e = mean_se(energies);
    const MeanSe f = mean_se(fidelities);
    agg.mean_energy = e.mean;
    agg.se_energy = e.se;
    agg.mean_fidelity = f.mean;
    agg.se_fidelity = f.se;
    out.push_back(agg);
  }
  return out;
}

std::string render_plot_svg(const std::vector<PlotSeries>& series) {
  if (series.empty()) {
    throw std::invalid_argument("render_plot_svg: no series");
  }
  const double exact_energy = ground_state(ising_hamiltonian()).ground_energy;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" "
         "height=\"440\" viewBox=\"0 0 960 440\" font-family=\"sans-serif\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"440\" "
         "fill=\"white\"/>\n";

  // Legend strip.
  double legend_x = 70.0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    svg << "<line x1=\"" << legend_x << "\" y1=\"16\" x2=\""
        << legend_x + 22 << "\" y2=\"16\" stroke=\"" << color
        << "\" stroke-width=\"2.5\"/>\n";
    svg << "<text x=\"" << legend_x + 28
        << "\" y=\"20\" font-size=\"12\">" << xml_escape(series[s].label)
        << "</text>\n";
    legend_x += 36.0 + 7.2 * static_cast<double>(series[s].label.size());
  }
  svg << "<text x=\"" << legend_x + 10
      << "\" y=\"20\" font-size=\"12\">(dashed: exact solution)</text>\n";

  draw_panel(svg, {70, 60, 450, 380}, "estimated minimum energy", "energy",
             series, false, exact_energy);
  draw_panel(svg, {560, 60, 940, 380}, "ground-state fidelity", "fidelity",
             series, true, 1.0);

  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::vector<PlotSeries>& series,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path);
  out << render_plot_svg(series);
  if (!out.good()) throw std::runtime_error("emit_plot: write failed: " + path);
}

std::string summary_text(const ExperimentResult& result) {
  const ExperimentConfig& cfg = result.config;
  std::ostringstream out;
  out << "optimizer = " << optimizer_name(cfg.optimizer) << "\n";
  out << "label = " << (cfg.label.empty() ? optimizer_name(cfg.optimizer)
                                          : cfg.label)
      << "\n";
  out << "measurements = " << cfg.measurements << "\n";
  out << "shots = " << cfg.shots << "\n";
  out << "runs = " << cfg.runs << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "noise = " << cfg.noise_label << "\n";
  out << "depolarizing_1q = " << fmt_g(cfg.noise.depolarizing_1q) << "\n";
  out << "depolarizing_2q = " << fmt_g(cfg.noise.depolarizing_2q) << "\n";
  out << "readout_flip = " << fmt_g(cfg.noise.readout_flip) << "\n";
  out << "completed_runs = " << result.completed_runs << "\n";
  out << "total_shots_per_run = " << result.total_shots_per_run << "\n";
  out << "se_defined = " << (result.se_defined ? "true" : "false") << "\n";
  out << "mean_final_energy = " << fmt_g(result.mean_final_energy) << "\n";
  out << "se_final_energy = " << fmt_g(result.se_final_energy) << "\n";
  out << "mean_final_fidelity = " << fmt_g(result.mean_final_fidelity) << "\n";
  out << "median_final_fidelity = " << fmt_g(result.median_final_fidelity)
      << "\n";
  int fallback_runs = 0;
  for (const RunResult& run : result.runs) {
    if (run.trace.completed && run.trace.mle_fallback_used) ++fallback_runs;
  }
  out << "mle_fallback_runs = " << fallback_runs << "\n";
  return out.str();
}

void emit_summary(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_summary: cannot open " + path);
  out << summary_text(result);
  if (!out.good()) {
    throw std::runtime_error("emit_summary: write failed: " + path);
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace vqb
