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

#include "vqb/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vqb/lbfgs.hpp"
#include "vqb/sobol.hpp"

namespace vqb {

namespace {

constexpr double kDegenerateStd = 1e-12;
constexpr int kSobolCandidates = 1000;
constexpr int kPolishStarts = 20;

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double ei_closed_form(double e_min, double mean, double sd) {
  if (sd < kDegenerateStd) return std::max(0.0, e_min - mean);
  const double z = (e_min - mean) / sd;
  return std::max(0.0, (e_min - mean) * normal_cdf(z) + sd * normal_pdf(z));
}

}  // namespace

double expected_improvement(const EiContext& ctx,
                            const Eigen::VectorXd& theta) {
  const ScalarPosterior p = posterior_point(ctx.model, theta);
  return ei_closed_form(ctx.e_min, p.mean, std::sqrt(p.variance));
}

NeiEnsemble build_nei_ensemble(const GpModel& model, int count, Rng& rng) {
  if (model.training.empty()) {
    throw std::invalid_argument("build_nei_ensemble: model has no training data");
  }
  if (count < 1) {
    throw std::invalid_argument("build_nei_ensemble: count must be >= 1");
  }
  std::vector<Eigen::VectorXd> points;
  points.reserve(model.training.size());
  for (const MeasurementRecord& rec : model.training) {
    points.push_back(rec.theta);
  }
  const std::vector<Eigen::VectorXd> samples =
      sample_joint(model, points, count, rng);

  NeiEnsemble ensemble;
  ensemble.shared_factor = true;
  ensemble.contexts.reserve(static_cast<std::size_t>(count));

  std::vector<MeasurementRecord> noiseless = model.training;
  for (std::size_t i = 0; i < noiseless.size(); ++i) {
    noiseless[i].energy = samples[0](static_cast<Eigen::Index>(i));
    noiseless[i].std_error = 0.0;
  }
  EiContext first;
  first.model = fit(model.kind, model.hyper, noiseless);
  first.e_min = samples[0].minCoeff();
  ensemble.contexts.push_back(std::move(first));

  for (int k = 1; k < count; ++k) {
    EiContext ctx;
    ctx.model = refit_values(ensemble.contexts[0].model, samples[static_cast<std::size_t>(k)]);
    ctx.e_min = samples[static_cast<std::size_t>(k)].minCoeff();
    ensemble.contexts.push_back(std::move(ctx));
  }
  return ensemble;
}

double noisy_expected_improvement(const NeiEnsemble& ensemble,
                                  const Eigen::VectorXd& theta) {
  if (ensemble.contexts.empty()) {
    throw std::invalid_argument("noisy_expected_improvement: empty ensemble");
  }
  double total = 0.0;
  if (!ensemble.shared_factor) {
    for (const EiContext& ctx : ensemble.contexts) {
      total += expected_improvement(ctx, theta);
    }
    return total / static_cast<double>(ensemble.contexts.size());
  }
  // All contexts share inputs, hyperparameters, and factor, so the posterior
  // variance is context-independent: one triangular solve serves every EI.
  const GpModel& base = ensemble.contexts[0].model;
  const Eigen::VectorXd k = kernel_vector(base, theta);
  const Eigen::VectorXd v = base.chol.triangularView<Eigen::Lower>().solve(k);
  const double variance =
      std::max(0.0, base.hyper.signal_var - v.squaredNorm());
  const double sd = std::sqrt(variance);
  for (const EiContext& ctx : ensemble.contexts) {
    const double mean = ctx.model.hyper.mean_const + k.dot(ctx.model.alpha);
    total += ei_closed_form(ctx.e_min, mean, sd);
  }
  return total / static_cast<double>(ensemble.contexts.size());
}

Eigen::VectorXd maximize_acquisition(const AcquisitionFn& f, int dim,
                                     Rng& rng) {
  (void)rng;
  if (dim < 1) {
    throw std::invalid_argument("maximize_acquisition: dim must be >= 1");
  }
  const std::vector<Eigen::VectorXd> candidates =
      sobol_points(kSobolCandidates, dim, 0);
  std::vector<double> values(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    values[i] = f(candidates[i]);
  }

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t starts =
      std::min<std::size_t>(kPolishStarts, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts),
                    order.end(), [&values](std::size_t a, std::size_t b) {
                      return values[a] > values[b];
                    });

  Eigen::VectorXd best = candidates[order[0]];
  double best_value = values[order[0]];

  const Eigen::VectorXd lo = Eigen::VectorXd::Zero(dim);
  const Eigen::VectorXd hi =
      Eigen::VectorXd::Constant(dim, 2.0 * std::numbers::pi);
  BoxMinimizeOptions options;
  options.max_iterations = 60;
  options.fd_step = 1e-6;
  const PlainObjectiveFn negated = [&f](const Eigen::VectorXd& x) {
    return -f(x);
  };
  for (std::size_t s = 0; s < starts; ++s) {
    const Eigen::VectorXd& start = candidates[order[s]];
    try {
      const BoxMinimizeResult run =
          minimize_box_fd(negated, start, lo, hi, options);
      if (std::isfinite(run.f) && -run.f > best_value) {
        best_value = -run.f;
        best = run.x;
      }
    } catch (const std::exception&) {
      // A failed polish falls back to its raw candidate, already covered.
    }
  }
  return best;
}

}  // namespace vqb
