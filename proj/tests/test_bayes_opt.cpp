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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vqb/bayes_opt.hpp"
#include "vqb/gp.hpp"
#include "vqb/rng.hpp"

using vqb::BoConfig;
using vqb::KernelKind;
using vqb::MeasurementRecord;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

MeasurementRecord record(const Eigen::VectorXd& theta, double energy,
                         double std_error, int shots) {
  MeasurementRecord rec;
  rec.theta = theta;
  rec.energy = energy;
  rec.std_error = std_error;
  rec.shots = shots;
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

// Noise-free 1-d cosine valley with its minimum at theta = 0 (mod 2pi).
vqb::ObjectiveFn cosine_objective(int* calls = nullptr) {
  return [calls](const Eigen::VectorXd& theta) {
    if (calls) ++*calls;
    return record(theta, -std::cos(theta(0)), 0.0, 16);
  };
}

BoConfig cosine_config() {
  BoConfig cfg;
  cfg.kernel = KernelKind::kPeriodic;
  cfg.dim = 1;
  cfg.n_init = 3;
  cfg.k_nei = 20;
  cfg.total_measurements = 15;
  cfg.shots = 16;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_CASE("incumbent ties break to the lowest training index") {
  const auto recs = std::vector<MeasurementRecord>{
      record(vec1(1.0), 0.5, 0.0, 2), record(vec1(1.0), 0.5, 0.0, 2)};
  const auto model = vqb::fit(KernelKind::kRbf, iso_hyper(0, 1, 1, 1), recs);
  const auto best = vqb::current_best(model);
  CHECK(best.index == 0);
}

TEST_CASE("with noise-free data the incumbent is the raw minimum") {
  const auto recs = std::vector<MeasurementRecord>{
      record(vec1(0.5), 0.8, 0.0, 2), record(vec1(2.5), -0.4, 0.0, 2),
      record(vec1(4.5), 0.1, 0.0, 2)};
  const auto model = vqb::fit(KernelKind::kRbf, iso_hyper(0, 1, 1, 1), recs);
  const auto best = vqb::current_best(model);
  CHECK(best.index == 1);
  CHECK(std::abs(best.energy - (-0.4)) < 1e-6);
  CHECK(best.theta == recs[1].theta);
}

TEST_CASE("a loud low outlier loses to a quiet moderate point") {
  // Point A reports -5 with a +-10 error bar; point B reports -1 exactly.
  // Under the unit prior the posterior mean at A shrinks almost to zero,
  // so B is the better incumbent despite the higher raw value.
  const auto recs = std::vector<MeasurementRecord>{
      record(vec1(0.0), -5.0, 10.0, 2), record(vec1(3.0), -1.0, 0.0, 2)};
  const auto model =
      vqb::fit(KernelKind::kRbf, iso_hyper(0.0, 1.0, 0.3, 1), recs);
  const auto best = vqb::current_best(model);
  CHECK(best.index == 1);
  const double mean_a = vqb::posterior_point(model, vec1(0.0)).mean;
  CHECK(std::abs(mean_a - (-5.0 / 101.0)) < 1e-3);
}

TEST_CASE("the loop localizes the cosine minimum under a tiny budget") {
  vqb::Rng rng(7);
  int calls = 0;
  const auto trace =
      vqb::run_bo(cosine_config(), cosine_objective(&calls), {}, rng);
  REQUIRE(trace.completed);
  CHECK(calls == 15);
  REQUIRE(trace.rows.size() == 15);
  CHECK(trace.best_energy < -0.95);
  const double wrapped = std::fmod(trace.theta_min(0) + std::numbers::pi, kTau);
  CHECK(std::abs(wrapped - std::numbers::pi) < 0.15);
  CHECK(!trace.mle_fallback_used);
}

TEST_CASE("trace rows are one per measurement with cumulative shots") {
  vqb::Rng rng(8);
  const auto trace = vqb::run_bo(cosine_config(), cosine_objective(), {}, rng);
  REQUIRE(trace.rows.size() == 15);
  for (int i = 0; i < 15; ++i) {
    const auto& row = trace.rows[static_cast<std::size_t>(i)];
    CHECK(row.iteration == i + 1);
    CHECK(row.cumulative_shots == 16LL * (i + 1));
    CHECK(std::isnan(row.true_energy));  // no diagnostics supplied
  }
  CHECK(trace.theta_min == trace.rows.back().theta_min);
  CHECK(trace.best_energy == trace.rows.back().best_energy_model);
}

TEST_CASE("the incumbent is always a previously measured point") {
  vqb::Rng rng(9);
  std::vector<Eigen::VectorXd> measured;
  const vqb::ObjectiveFn objective = [&measured](const Eigen::VectorXd& t) {
    measured.push_back(t);
    return record(t, -std::cos(t(0)), 0.0, 16);
  };
  const auto trace = vqb::run_bo(cosine_config(), objective, {}, rng);
  for (const auto& row : trace.rows) {
    bool found = false;
    for (const auto& t : measured) {
      if (t == row.theta_min) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("identical seeds give identical traces") {
  vqb::Rng a(11);
  vqb::Rng b(11);
  const auto ta = vqb::run_bo(cosine_config(), cosine_objective(), {}, a);
  const auto tb = vqb::run_bo(cosine_config(), cosine_objective(), {}, b);
  REQUIRE(ta.rows.size() == tb.rows.size());
  for (std::size_t i = 0; i < ta.rows.size(); ++i) {
    CHECK(ta.rows[i].energy_estimate == tb.rows[i].energy_estimate);
    CHECK(ta.rows[i].best_energy_model == tb.rows[i].best_energy_model);
    CHECK(ta.rows[i].theta_min == tb.rows[i].theta_min);
  }
}

TEST_CASE("a budget equal to the initial design skips the NEI stage") {
  BoConfig cfg = cosine_config();
  cfg.total_measurements = 3;
  vqb::Rng rng(12);
  int calls = 0;
  const auto trace = vqb::run_bo(cfg, cosine_objective(&calls), {}, rng);
  CHECK(trace.completed);
  CHECK(calls == 3);
  CHECK(trace.rows.size() == 3);
}

TEST_CASE("early rows report the raw minimum before a model exists") {
  BoConfig cfg = cosine_config();
  cfg.total_measurements = 3;
  vqb::Rng rng(13);
  std::vector<double> energies;
  const vqb::ObjectiveFn objective = [&energies](const Eigen::VectorXd& t) {
    const double e = -std::cos(t(0));
    energies.push_back(e);
    return record(t, e, 0.0, 16);
  };
  const auto trace = vqb::run_bo(cfg, objective, {}, rng);
  REQUIRE(trace.rows.size() == 3);
  CHECK(trace.rows[0].best_energy_model == energies[0]);
  CHECK(trace.rows[1].best_energy_model ==
        std::min(energies[0], energies[1]));
}

TEST_CASE("stability stop ends a flat run early") {
  BoConfig cfg = cosine_config();
  cfg.total_measurements = 40;
  cfg.stability_stop = true;
  cfg.stability_window = 3;
  cfg.stability_tolerance = 1e-3;
  vqb::Rng rng(14);
  const vqb::ObjectiveFn flat = [](const Eigen::VectorXd& t) {
    return record(t, 1.0, 0.0, 16);
  };
  const auto trace = vqb::run_bo(cfg, flat, {}, rng);
  CHECK(trace.completed);
  CHECK(trace.rows.size() < 40);
  CHECK(trace.rows.size() >= static_cast<std::size_t>(cfg.n_init + 3));
}

TEST_CASE("an objective failure preserves the partial trace") {
  BoConfig cfg = cosine_config();
  vqb::Rng rng(15);
  int calls = 0;
  const vqb::ObjectiveFn failing = [&calls](const Eigen::VectorXd& t) {
    if (++calls == 5) throw std::runtime_error("hardware went away");
    return record(t, -std::cos(t(0)), 0.0, 16);
  };
  const auto trace = vqb::run_bo(cfg, failing, {}, rng);
  CHECK(!trace.completed);
  CHECK(trace.rows.size() == 4);
  CHECK(trace.error.find("hardware") != std::string::npos);
  CHECK(trace.theta_min.size() == 1);
}

TEST_CASE("diagnostics flow into the trace rows untouched") {
  BoConfig cfg = cosine_config();
  cfg.total_measurements = 5;
  vqb::Rng rng(16);
  const vqb::DiagnosticsFn diag = [](const Eigen::VectorXd&) {
    return vqb::Diagnostics{42.0, 0.5};
  };
  const auto trace = vqb::run_bo(cfg, cosine_objective(), diag, rng);
  for (const auto& row : trace.rows) {
    CHECK(row.true_energy == 42.0);
    CHECK(row.fidelity == 0.5);
  }
}

TEST_CASE("configuration is validated") {
  vqb::Rng rng(17);
  BoConfig cfg = cosine_config();
  cfg.n_init = 0;
  CHECK_THROWS_AS(vqb::run_bo(cfg, cosine_objective(), {}, rng),
                  std::invalid_argument);
  cfg = cosine_config();
  cfg.total_measurements = 2;
  CHECK_THROWS_AS(vqb::run_bo(cfg, cosine_objective(), {}, rng),
                  std::invalid_argument);
  cfg = cosine_config();
  cfg.shots = 1;
  CHECK_THROWS_AS(vqb::run_bo(cfg, cosine_objective(), {}, rng),
                  std::invalid_argument);
}
