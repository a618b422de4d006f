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

// End-to-end acceptance gate. Each numbered case re-derives one headline
// guarantee of the library from scratch and prints a single PASS/FAIL line
// with the measured numbers, so a log scan shows the whole contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vqb/acquisition.hpp"
#include "vqb/baselines.hpp"
#include "vqb/bayes_opt.hpp"
#include "vqb/circuit.hpp"
#include "vqb/gp.hpp"
#include "vqb/harness.hpp"
#include "vqb/pauli.hpp"
#include "vqb/rng.hpp"
#include "vqb/shots.hpp"
#include "vqb/sobol.hpp"

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int index, bool ok, const std::string& detail, double seconds) {
  std::printf("ACCEPTANCE %d/9 %s: %s [%.2f s]\n", index, ok ? "PASS" : "FAIL",
              detail.c_str(), seconds);
  std::fflush(stdout);
}

vqb::MeasurementRecord record(const Eigen::VectorXd& theta, double energy,
                              double std_error) {
  vqb::MeasurementRecord rec;
  rec.theta = theta;
  rec.energy = energy;
  rec.std_error = std_error;
  rec.shots = 16;
  return rec;
}

vqb::Hyperparameters iso_hyper(double mean, double signal_var, double ls,
                               int dim) {
  vqb::Hyperparameters h;
  h.mean_const = mean;
  h.signal_var = signal_var;
  h.lengthscales = Eigen::VectorXd::Constant(dim, ls);
  return h;
}

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

// A probe far from the single zero-error training point sees exactly the
// prior (mean_const, signal_var), turning the model into an (m, s) dial.
vqb::EiContext prior_context(double m, double s, double e_min) {
  vqb::EiContext ctx;
  ctx.model = vqb::fit(vqb::KernelKind::kRbf, iso_hyper(m, s * s, 1.0, 1),
                       {record(vec1(0.0), m, 0.0)});
  ctx.e_min = e_min;
  return ctx;
}

vqb::ExperimentConfig benchmark_config(vqb::OptimizerKind optimizer,
                                       int measurements, int shots) {
  vqb::ExperimentConfig cfg;
  cfg.optimizer = optimizer;
  cfg.measurements = measurements;
  cfg.shots = shots;
  cfg.runs = 20;
  cfg.seed = 7;
  return cfg;
}

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

}  // namespace

TEST_CASE("acceptance 1: exact ground truth of the Ising problem") {
  Timer timer;
  const auto spectrum = vqb::ground_state(vqb::ising_hamiltonian());
  const double energy_err = std::abs(spectrum.ground_energy + std::sqrt(5.0));
  const double off_support = std::abs(spectrum.ground_state(1)) +
                             std::abs(spectrum.ground_state(2));
  const double alpha_sq = std::norm(spectrum.ground_state(0));
  const double alpha_sq_err =
      std::abs(alpha_sq - 1.0 / (10.0 - 4.0 * std::sqrt(5.0)));
  const bool ok =
      energy_err < 1e-10 && alpha_sq_err < 1e-9 && off_support < 1e-9;
  report(1, ok,
         "ground energy -sqrt(5) and alpha^2 from diagonalization (energy "
         "err " + fmt("%.2e, alpha^2 err %.2e", energy_err, alpha_sq_err) +
             ")",
         timer.seconds());
  CHECK(ok);
}

TEST_CASE("acceptance 2: GP posterior matches the dense oracle") {
  Timer timer;
  vqb::Rng rng(202);
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 1 + rng.below(8);
    const int dim = 1 + rng.below(6);
    const vqb::KernelKind kind = (instance % 2 == 0)
                                     ? vqb::KernelKind::kRbf
                                     : vqb::KernelKind::kPeriodic;
    vqb::Hyperparameters hyper;
    hyper.mean_const = rng.uniform(-2.0, 2.0);
    hyper.signal_var = rng.uniform(0.1, 5.0);
    hyper.lengthscales = Eigen::VectorXd::NullaryExpr(
        dim, [&rng](Eigen::Index) { return rng.uniform(0.3, 3.0); });
    std::vector<vqb::MeasurementRecord> records;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd theta = Eigen::VectorXd::NullaryExpr(
          dim, [&rng](Eigen::Index) { return rng.uniform(0.0, kTau); });
      records.push_back(
          record(theta, rng.uniform(-2.0, 2.0), rng.uniform(0.05, 0.55)));
    }
    std::vector<Eigen::VectorXd> queries;
    for (int q = 0; q < 4; ++q) {
      queries.push_back(Eigen::VectorXd::NullaryExpr(
          dim, [&rng](Eigen::Index) { return rng.uniform(0.0, kTau); }));
    }
    const vqb::GpModel model = vqb::fit(kind, hyper, records);
    const vqb::Posterior fast = vqb::posterior(model, queries);
    const auto oracle = vqb_test::dense_posterior(kind, hyper, records,
                                                  queries, model.jitter);
    worst = std::max(worst, (fast.mean - oracle.mean).cwiseAbs().maxCoeff());
    worst = std::max(worst, (fast.cov - oracle.cov).cwiseAbs().maxCoeff());
  }
  const double elapsed = timer.seconds();
  const bool ok = worst < 1e-8 && elapsed < 5.0;
  report(2, ok,
         "posterior mean/cov vs dense inversion on 100 instances (max dev " +
             fmt("%.2e", worst) + ")",
         elapsed);
  CHECK(ok);
}

TEST_CASE("acceptance 3: closed-form EI matches Monte-Carlo") {
  Timer timer;
  const double literal =
      vqb::expected_improvement(prior_context(0.0, 1.0, 0.0), vec1(40.0));
  const double literal_err = std::abs(literal - 1.0 / std::sqrt(kTau));

  vqb::Rng rng(303);
  double worst_z = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double m = rng.uniform(-2.0, 2.0);
    const double s = rng.uniform(0.1, 2.0);
    // Incumbent within 3 posterior widths so the draws see improvement mass.
    const double e_min = m + s * rng.uniform(-3.0, 3.0);
    const double ei =
        vqb::expected_improvement(prior_context(m, s, e_min), vec1(40.0));
    const int draws = 1000000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double imp = std::max(0.0, e_min - (m + s * rng.normal()));
      sum += imp;
      sum_sq += imp * imp;
    }
    const double mc = sum / draws;
    const double se = std::sqrt(
        std::max(0.0, (sum_sq - draws * mc * mc) / (draws - 1.0) / draws));
    worst_z = std::max(worst_z, std::abs(ei - mc) / (se + 1e-300));
  }
  const double elapsed = timer.seconds();
  const bool ok = literal_err < 1e-9 && worst_z < 4.0 && elapsed < 10.0;
  report(3, ok,
         "EI vs 1e6-sample Monte-Carlo on 20 triples (max |dev|/SE " +
             fmt("%.2f, z=0 literal err %.2e", worst_z, literal_err) + ")",
         elapsed);
  CHECK(ok);
}

TEST_CASE("acceptance 4: NEI degenerates to EI on zero-error data") {
  Timer timer;
  vqb::Rng rng(404);
  std::vector<vqb::MeasurementRecord> records;
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXd theta(2);
    theta << rng.uniform(0.0, kTau), rng.uniform(0.0, kTau);
    records.push_back(record(theta, rng.uniform(-2.0, 2.0), 0.0));
  }
  const vqb::GpModel model =
      vqb::fit(vqb::KernelKind::kPeriodic, iso_hyper(0.0, 1.5, 1.2, 2),
               records);
  vqb::Rng ensemble_rng(405);
  const vqb::NeiEnsemble ensemble =
      vqb::build_nei_ensemble(model, 20, ensemble_rng);
  vqb::EiContext ei_ctx;
  ei_ctx.model = model;
  ei_ctx.e_min = vqb::current_best(model).energy;

  double worst = 0.0;
  for (const Eigen::VectorXd& probe : vqb::sobol_points(50, 2, 0)) {
    const double nei = vqb::noisy_expected_improvement(ensemble, probe);
    const double ei = vqb::expected_improvement(ei_ctx, probe);
    worst = std::max(worst, std::abs(nei - ei));
  }
  const double elapsed = timer.seconds();
  const bool ok = worst < 1e-9 && elapsed < 5.0;
  report(4, ok,
         "NEI == EI with all error bars zero, 5-point model, 50 probes "
         "(max dev " + fmt("%.2e", worst) + ")",
         elapsed);
  CHECK(ok);
}

TEST_CASE("acceptance 5: shot estimator calibration at S = 16") {
  Timer timer;
  const auto h = vqb::ising_hamiltonian();
  Eigen::VectorXd theta(6);
  theta << 0.9, 2.1, 0.3, 1.2, 2.8, 0.5;
  const double exact =
      vqb::expectation_exact(vqb::apply_circuit(theta), h);

  vqb::Rng rng(505);
  const int reps = 2000;
  std::vector<double> estimates;
  double mean_reported_var = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto rec = vqb::measure_energy(theta, 16, h, vqb::NoiseConfig{},
                                         rng);
    estimates.push_back(rec.energy);
    mean_reported_var += rec.std_error * rec.std_error;
  }
  mean_reported_var /= reps;
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= reps;
  double empirical_var = 0.0;
  for (double e : estimates) empirical_var += (e - mean) * (e - mean);
  empirical_var /= (reps - 1);
  const double pooled_se = std::sqrt(empirical_var / reps);
  const double mean_dev = std::abs(mean - exact);
  const double ratio = mean_reported_var / empirical_var;

  const double elapsed = timer.seconds();
  const bool ok = mean_dev < 4.0 * pooled_se && ratio > 0.7 && ratio < 1.4 &&
                  elapsed < 30.0;
  report(5, ok,
         "2000-rep estimator calibration (|mean - exact|/pooled-SE " +
             fmt("%.2f, reported/empirical variance %.3f", mean_dev / pooled_se,
                 ratio) +
             ")",
         elapsed);
  CHECK(ok);
}

TEST_CASE("acceptance 6: all studied setups consume exactly 1280 shots") {
  Timer timer;
  const int setups[3][2] = {{20, 64}, {40, 32}, {80, 16}};
  bool ok = true;
  long long consumed[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    vqb::ExperimentConfig cfg;
    cfg.optimizer = vqb::OptimizerKind::kNft;
    cfg.measurements = setups[i][0];
    cfg.shots = setups[i][1];
    cfg.runs = 1;
    cfg.seed = 11;
    consumed[i] = vqb::run_experiment(cfg).total_shots_per_run;
    ok = ok && consumed[i] == 1280;
  }
  report(6, ok,
         "budgets for (20,64), (40,32), (80,16): " +
             std::to_string(consumed[0]) + ", " + std::to_string(consumed[1]) +
             ", " + std::to_string(consumed[2]) + " shots",
         timer.seconds());
  CHECK(ok);
}

TEST_CASE("acceptance 7: ordinal benchmark under the 1280-shot budget") {
  Timer timer;
  const auto bo_periodic = vqb::run_experiment(
      benchmark_config(vqb::OptimizerKind::kBoPeriodic, 80, 16));
  const auto bo_rbf = vqb::run_experiment(
      benchmark_config(vqb::OptimizerKind::kBoRbf, 80, 16));
  const auto nft =
      vqb::run_experiment(benchmark_config(vqb::OptimizerKind::kNft, 40, 32));
  const auto spsa =
      vqb::run_experiment(benchmark_config(vqb::OptimizerKind::kSpsa, 80, 16));

  const double elapsed = timer.seconds();
  const bool bo_ok = bo_periodic.median_final_fidelity >= 0.9;
  const bool nft_ok = nft.median_final_fidelity >= 0.9;
  const bool spsa_ok =
      spsa.mean_final_fidelity < bo_periodic.mean_final_fidelity &&
      spsa.mean_final_fidelity < bo_rbf.mean_final_fidelity;
  const bool ok = bo_ok && nft_ok && spsa_ok && elapsed < 600.0;
  report(7, ok,
         fmt("20-run medians: bo-periodic %.3f, nft %.3f; mean fidelities "
             "spsa %.3f vs bo %.3f",
             bo_periodic.median_final_fidelity, nft.median_final_fidelity,
             spsa.mean_final_fidelity,
             std::min(bo_periodic.mean_final_fidelity,
                      bo_rbf.mean_final_fidelity)),
         elapsed);
  CHECK(bo_ok);
  CHECK(nft_ok);
  CHECK(spsa_ok);
  CHECK(elapsed < 600.0);
}

TEST_CASE("acceptance 8: cross-cutting property bundle") {
  Timer timer;
  vqb::Rng rng(808);
  bool norms = true;
  bool periodic_ansatz = true;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd theta = Eigen::VectorXd::NullaryExpr(
        6, [&rng](Eigen::Index) { return rng.uniform(0.0, kTau); });
    const vqb::Statevector psi = vqb::apply_circuit(theta);
    norms = norms && std::abs(psi.norm() - 1.0) < 1e-12;
    Eigen::VectorXd shifted = theta;
    shifted(trial % 6) += kTau;
    periodic_ansatz =
        periodic_ansatz &&
        vqb::fidelity(psi, vqb::apply_circuit(shifted)) > 1.0 - 1e-12;
  }

  const auto hyper = iso_hyper(0.0, 1.7, 0.9, 3);
  Eigen::VectorXd a(3), b(3);
  a << 0.3, 4.0, 2.2;
  b << 5.9, 1.1, 0.4;
  Eigen::VectorXd b_wrapped = b;
  b_wrapped(1) += kTau;
  const bool periodic_kernel =
      std::abs(vqb::kernel_eval(vqb::KernelKind::kPeriodic, hyper, a, b) -
               vqb::kernel_eval(vqb::KernelKind::kPeriodic, hyper, a,
                                b_wrapped)) < 1e-12;

  // Exact-sinusoid residual of the coordinate fit on the real objective.
  const auto h = vqb::ising_hamiltonian();
  Eigen::VectorXd theta(6);
  theta << 1.3, 0.4, 5.1, 2.0, 3.3, 0.7;
  const auto slice = [&](double phi) {
    Eigen::VectorXd t = theta;
    t(2) = phi;
    return vqb::expectation_exact(vqb::apply_circuit(t), h);
  };
  const auto fit = vqb::nft_sinusoid_fit(
      slice(0.8), slice(0.8 + std::numbers::pi / 2.0),
      slice(0.8 - std::numbers::pi / 2.0), 0.8);
  double fit_residual = 0.0;
  for (double probe : {0.1, 1.9, 3.6, 5.2}) {
    const double predicted =
        fit.amplitude * std::cos(probe - fit.phase) + fit.offset;
    fit_residual = std::max(fit_residual, std::abs(predicted - slice(probe)));
  }

  vqb::SobolSequence s1(4), s2(4);
  bool sobol_deterministic = true;
  for (int i = 0; i < 100; ++i) {
    sobol_deterministic = sobol_deterministic && s1.next() == s2.next();
  }

  const double elapsed = timer.seconds();
  const bool ok = norms && periodic_ansatz && periodic_kernel &&
                  fit_residual < 1e-8 && sobol_deterministic && elapsed < 60.0;
  report(8, ok,
         "norm preservation, 2pi ansatz periodicity, periodic kernel, "
         "sinusoid residual " + fmt("%.2e", fit_residual) +
             ", Sobol determinism",
         elapsed);
  CHECK(ok);
}

TEST_CASE("acceptance 9: two exact NFT sweeps reach the ground energy") {
  Timer timer;
  const auto h = vqb::ising_hamiltonian();
  const double reference = vqb::ground_state(h).ground_energy;
  const vqb::ObjectiveFn exact = [&h](const Eigen::VectorXd& theta) {
    vqb::MeasurementRecord rec;
    rec.theta = theta;
    rec.energy = vqb::expectation_exact(vqb::apply_circuit(theta), h);
    rec.std_error = 0.0;
    rec.shots = 2;
    return rec;
  };
  vqb::NftConfig cfg;
  cfg.measurements = 27;  // initial center + two 6-coordinate sweeps
  cfg.reset_interval = 4;
  cfg.initial = Eigen::VectorXd::Zero(6);
  vqb::Rng rng(1);
  const auto trace = vqb::run_nft(cfg, exact, 6, {}, rng);
  const double err = std::abs(trace.best_energy - reference);
  const double elapsed = timer.seconds();
  const bool ok = trace.completed && err < 1e-6;
  report(9, ok,
         "exact-objective NFT from theta = 0, 2 sweeps (|E - E0| " +
             fmt("%.2e", err) + ")",
         elapsed);
  CHECK(ok);
}
