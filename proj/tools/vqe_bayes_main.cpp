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

// Command-line front end. Exit codes: 0 success, 1 configuration error,
// 2 runtime failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vqb/harness.hpp"

namespace {

int run_command(const std::string& optimizer, int measurements, int shots,
                int runs, std::uint64_t seed, const std::string& noise,
                const std::string& out_dir, const std::string& label) {
  vqb::ExperimentConfig cfg;
  cfg.optimizer = vqb::parse_optimizer(optimizer);
  cfg.measurements = measurements;
  cfg.shots = shots;
  cfg.runs = runs;
  cfg.seed = seed;
  cfg.out_dir = out_dir;
  cfg.label = label;
  if (noise == "off") {
    cfg.noise = vqb::NoiseConfig{};
  } else if (noise == "mild") {
    cfg.noise = vqb::mild_noise();
  } else {
    throw std::invalid_argument("--noise must be 'off' or 'mild', got '" +
                                noise + "'");
  }
  cfg.noise_label = noise;

  const vqb::ExperimentResult result = vqb::run_experiment(cfg);
  std::cout << vqb::summary_text(result);
  if (result.completed_runs == 0) {
    std::cerr << "error: no run completed\n";
    return 2;
  }
  return 0;
}

int plot_command(const std::vector<std::string>& inputs,
                 const std::string& out_path) {
  std::vector<vqb::PlotSeries> series;
  for (const std::string& input : inputs) {
    vqb::PlotSeries s;
    s.label = std::filesystem::path(input).stem().string();
    s.rows = vqb::aggregate_rows(vqb::parse_csv_file(input));
    series.push_back(std::move(s));
  }
  vqb::emit_plot(series, out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Shot-budgeted variational ground-state search on the two-qubit "
      "transverse-field Ising model: Bayesian optimization versus SPSA and "
      "NFT baselines"};
  app.require_subcommand(1);

  std::string optimizer = "bo-periodic";
  int measurements = 80;
  int shots = 16;
  int runs = 20;
  std::uint64_t seed = 7;
  std::string noise = "off";
  std::string out_dir = ".";
  std::string label;

  CLI::App* run = app.add_subcommand(
      "run", "Run repeated optimizations and write csv/summary/svg");
  run->add_option("--optimizer", optimizer,
                  "bo-rbf, bo-periodic, spsa, or nft")
      ->capture_default_str();
  run->add_option("--measurements", measurements,
                  "total energy measurements per run")
      ->capture_default_str();
  run->add_option("--shots", shots, "shots per measurement (>= 2)")
      ->capture_default_str();
  run->add_option("--runs", runs, "independent repetitions")
      ->capture_default_str();
  run->add_option("--seed", seed, "base seed; run r uses seed + r")
      ->capture_default_str();
  run->add_option("--noise", noise, "off or mild")->capture_default_str();
  run->add_option("--out", out_dir, "output directory")
      ->capture_default_str();
  run->add_option("--label", label,
                  "output file base name (defaults to the optimizer name)");
  run->set_config("--config", "",
                  "config file with 'key = value' lines; flags override it");

  CLI::App* plot = app.add_subcommand(
      "plot", "Overlay aggregate curves from run csv files into one svg");
  std::vector<std::string> inputs;
  std::string plot_out;
  plot->add_option("--inputs", inputs, "input csv files")
      ->required()
      ->expected(-1);
  plot->add_option("--out", plot_out, "output svg path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      return run_command(optimizer, measurements, shots, runs, seed, noise,
                         out_dir, label);
    }
    return plot_command(inputs, plot_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
