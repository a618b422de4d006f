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

#include "vqb/gp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vqb/lbfgs.hpp"

namespace vqb {

namespace {

constexpr double kJitterStart = 1e-10;
constexpr int kJitterEscalations = 5;
constexpr double kJitterGrowth = 100.0;
// Posterior directions with variance at the fit-jitter scale carry no
// information; sample_joint collapses them to the mean.
constexpr double kSampleVarianceFloor = 1e-8;

void validate_hyper(const Hyperparameters& hyper) {
  if (!std::isfinite(hyper.mean_const)) {
    throw std::invalid_argument("Hyperparameters: non-finite mean");
  }
  if (!(hyper.signal_var > 0.0) || !std::isfinite(hyper.signal_var)) {
    throw std::invalid_argument("Hyperparameters: signal_var must be positive");
  }
  if (hyper.lengthscales.size() == 0) {
    throw std::invalid_argument("Hyperparameters: lengthscales missing");
  }
  for (Eigen::Index a = 0; a < hyper.lengthscales.size(); ++a) {
    const double l = hyper.lengthscales(a);
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument(
          "Hyperparameters: lengthscales must be positive");
    }
  }
}

void validate_records(const std::vector<MeasurementRecord>& records, int dim) {
  if (records.empty()) {
    throw std::invalid_argument("gp: need at least one record");
  }
  for (const MeasurementRecord& rec : records) {
    if (rec.theta.size() != dim) {
      throw std::invalid_argument("gp: record dimension mismatch");
    }
    if (!rec.theta.allFinite() || !std::isfinite(rec.energy) ||
        !std::isfinite(rec.std_error) || rec.std_error < 0.0) {
      throw std::invalid_argument("gp: record has non-finite or invalid fields");
    }
  }
}

// Kernel weights so that k = signal_var * exp(-sum_a w_a * s_a) with
// s_a = (da)^2 for RBF and s_a = sin^2(da / 2) for the periodic kernel.
// For both kinds dk/dlog(l_a) = k * 2 * w_a * s_a.
Eigen::VectorXd kernel_weights(KernelKind kind,
                               const Eigen::VectorXd& lengthscales) {
  Eigen::VectorXd w(lengthscales.size());
  for (Eigen::Index a = 0; a < lengthscales.size(); ++a) {
    const double l2 = lengthscales(a) * lengthscales(a);
    w(a) = (kind == KernelKind::kRbf) ? 0.5 / l2 : 2.0 / l2;
  }
  return w;
}

double coordinate_distance(KernelKind kind, double delta) {
  if (kind == KernelKind::kRbf) return delta * delta;
  const double s = std::sin(0.5 * delta);
  return s * s;
}

double kernel_from_weights(KernelKind kind, double signal_var,
                           const Eigen::VectorXd& w, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& b) {
  double exponent = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    exponent += w(k) * coordinate_distance(kind, a(k) - b(k));
  }
  return signal_var * std::exp(-exponent);
}

// Per-coordinate distance matrices between training inputs; they depend on
// the inputs only, so MLE-II reuses them across all likelihood evaluations.
struct LmlWorkspace {
  KernelKind kind = KernelKind::kRbf;
  int n = 0;
  int dim = 0;
  std::vector<Eigen::MatrixXd> dist;
  Eigen::VectorXd energies;
  Eigen::VectorXd errors2;
};

LmlWorkspace build_workspace(KernelKind kind,
                             const std::vector<MeasurementRecord>& records) {
  LmlWorkspace ws;
  ws.kind = kind;
  ws.n = static_cast<int>(records.size());
  ws.dim = static_cast<int>(records[0].theta.size());
  ws.energies.resize(ws.n);
  ws.errors2.resize(ws.n);
  for (int i = 0; i < ws.n; ++i) {
    ws.energies(i) = records[static_cast<std::size_t>(i)].energy;
    const double se = records[static_cast<std::size_t>(i)].std_error;
    ws.errors2(i) = se * se;
  }
  ws.dist.assign(static_cast<std::size_t>(ws.dim),
                 Eigen::MatrixXd::Zero(ws.n, ws.n));
  for (int i = 0; i < ws.n; ++i) {
    for (int j = 0; j < i; ++j) {
      const Eigen::VectorXd delta = records[static_cast<std::size_t>(i)].theta -
                                    records[static_cast<std::size_t>(j)].theta;
      for (int a = 0; a < ws.dim; ++a) {
        const double s = coordinate_distance(kind, delta(a));
        ws.dist[static_cast<std::size_t>(a)](i, j) = s;
        ws.dist[static_cast<std::size_t>(a)](j, i) = s;
      }
    }
  }
  return ws;
}

Eigen::MatrixXd kernel_matrix_from_workspace(const LmlWorkspace& ws,
                                             double signal_var,
                                             const Eigen::VectorXd& w) {
  Eigen::MatrixXd exponent = Eigen::MatrixXd::Zero(ws.n, ws.n);
  for (int a = 0; a < ws.dim; ++a) {
    exponent.noalias() += w(a) * ws.dist[static_cast<std::size_t>(a)];
  }
  return signal_var * (-exponent).array().exp().matrix();
}

struct Factorized {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  bool ok = false;
};

Factorized factorize_with_jitter(const Eigen::MatrixXd& matrix) {
  Factorized out;
  double jitter = kJitterStart;
  const Eigen::Index n = matrix.rows();
  for (int round = 0; round <= kJitterEscalations; ++round) {
    out.llt.compute(matrix +
                    jitter * Eigen::MatrixXd::Identity(n, n));
    if (out.llt.info() == Eigen::Success) {
      out.jitter = jitter;
      out.ok = true;
      return out;
    }
    jitter *= kJitterGrowth;
  }
  return out;
}

// Log marginal likelihood and its gradient in the packed parameterization
// x = (mean, log signal_var, log lengthscale_1..d). Returns -inf when the
// covariance cannot be factorized even with escalated jitter.
double lml_core(const LmlWorkspace& ws, const Eigen::VectorXd& x,
                Eigen::VectorXd* grad) {
  const double mu = x(0);
  const double signal_var = std::exp(x(1));
  Eigen::VectorXd lengthscales(ws.dim);
  for (int a = 0; a < ws.dim; ++a) lengthscales(a) = std::exp(x(2 + a));
  const Eigen::VectorXd w = kernel_weights(ws.kind, lengthscales);

  const Eigen::MatrixXd kernel =
      kernel_matrix_from_workspace(ws, signal_var, w);
  Eigen::MatrixXd ktilde = kernel;
  ktilde.diagonal() += ws.errors2;
  const Factorized fac = factorize_with_jitter(ktilde);
  if (!fac.ok) {
    if (grad) grad->setZero(x.size());
    return -std::numeric_limits<double>::infinity();
  }

  const Eigen::VectorXd r =
      ws.energies - Eigen::VectorXd::Constant(ws.n, mu);
  const Eigen::VectorXd alpha = fac.llt.solve(r);
  const double logdet =
      2.0 * fac.llt.matrixLLT().diagonal().array().log().sum();
  const double lml = -0.5 * r.dot(alpha) - 0.5 * logdet -
                     0.5 * ws.n * std::log(2.0 * std::numbers::pi);

  if (grad) {
    grad->resize(x.size());
    (*grad)(0) = alpha.sum();
    // dLML/dtheta = 1/2 tr((alpha alpha^T - Kinv) dK/dtheta); with
    // dK/dlog(l_a) = K .* (2 w_a s_a) every term reduces to sums over
    // G = (alpha alpha^T - Kinv) .* K.
    const Eigen::MatrixXd kinv =
        fac.llt.solve(Eigen::MatrixXd::Identity(ws.n, ws.n));
    const Eigen::MatrixXd g =
        ((alpha * alpha.transpose() - kinv).array() * kernel.array()).matrix();
    (*grad)(1) = 0.5 * g.sum();
    for (int a = 0; a < ws.dim; ++a) {
      (*grad)(2 + a) =
          w(a) *
          (g.array() * ws.dist[static_cast<std::size_t>(a)].array()).sum();
    }
  }
  return lml;
}

Eigen::VectorXd pack(const Hyperparameters& hyper) {
  Eigen::VectorXd x(2 + hyper.lengthscales.size());
  x(0) = hyper.mean_const;
  x(1) = std::log(hyper.signal_var);
  for (Eigen::Index a = 0; a < hyper.lengthscales.size(); ++a) {
    x(2 + a) = std::log(hyper.lengthscales(a));
  }
  return x;
}

Hyperparameters unpack(const Eigen::VectorXd& x) {
  Hyperparameters hyper;
  hyper.mean_const = x(0);
  hyper.signal_var = std::exp(x(1));
  hyper.lengthscales.resize(x.size() - 2);
  for (Eigen::Index a = 0; a + 2 < x.size(); ++a) {
    hyper.lengthscales(a) = std::exp(x(2 + a));
  }
  return hyper;
}

}  // namespace

double kernel_eval(KernelKind kind, const Hyperparameters& hyper,
                   const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  validate_hyper(hyper);
  if (a.size() != b.size() || a.size() != hyper.lengthscales.size()) {
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  }
  const Eigen::VectorXd w = kernel_weights(kind, hyper.lengthscales);
  return kernel_from_weights(kind, hyper.signal_var, w, a, b);
}

GpModel fit(KernelKind kind, const Hyperparameters& hyper,
            const std::vector<MeasurementRecord>& records) {
  validate_hyper(hyper);
  validate_records(records, static_cast<int>(hyper.lengthscales.size()));
  const int n = static_cast<int>(records.size());
  const Eigen::VectorXd w = kernel_weights(kind, hyper.lengthscales);

  Eigen::MatrixXd ktilde(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double k = kernel_from_weights(
          kind, hyper.signal_var, w, records[static_cast<std::size_t>(i)].theta,
          records[static_cast<std::size_t>(j)].theta);
      ktilde(i, j) = k;
      ktilde(j, i) = k;
    }
    const double se = records[static_cast<std::size_t>(i)].std_error;
    ktilde(i, i) += se * se;
  }

  const Factorized fac = factorize_with_jitter(ktilde);
  if (!fac.ok) {
    throw std::runtime_error(
        "fit: Cholesky failed for " + std::to_string(n) +
        " records even with jitter escalated to " +
        std::to_string(kJitterStart *
                       std::pow(kJitterGrowth, kJitterEscalations)));
  }

  GpModel model;
  model.kind = kind;
  model.hyper = hyper;
  model.training = records;
  model.chol = fac.llt.matrixL();
  model.jitter = fac.jitter;
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    r(i) = records[static_cast<std::size_t>(i)].energy - hyper.mean_const;
  }
  model.alpha = fac.llt.solve(r);
  return model;
}

GpModel refit_values(const GpModel& donor, const Eigen::VectorXd& energies) {
  const int n = static_cast<int>(donor.training.size());
  if (energies.size() != n) {
    throw std::invalid_argument("refit_values: value count mismatch");
  }
  GpModel model = donor;
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    model.training[static_cast<std::size_t>(i)].energy = energies(i);
    r(i) = energies(i) - model.hyper.mean_const;
  }
  const Eigen::VectorXd tmp =
      model.chol.triangularView<Eigen::Lower>().solve(r);
  model.alpha =
      model.chol.transpose().triangularView<Eigen::Upper>().solve(tmp);
  return model;
}

Eigen::VectorXd kernel_vector(const GpModel& model,
                              const Eigen::VectorXd& point) {
  const int n = static_cast<int>(model.training.size());
  const Eigen::VectorXd w =
      kernel_weights(model.kind, model.hyper.lengthscales);
  Eigen::VectorXd k(n);
  for (int i = 0; i < n; ++i) {
    k(i) = kernel_from_weights(model.kind, model.hyper.signal_var, w,
                               model.training[static_cast<std::size_t>(i)].theta,
                               point);
  }
  return k;
}

Posterior posterior(const GpModel& model,
                    const std::vector<Eigen::VectorXd>& points) {
  const int n = static_cast<int>(model.training.size());
  const int m = static_cast<int>(points.size());
  if (m == 0) {
    throw std::invalid_argument("posterior: no query points");
  }
  const Eigen::VectorXd w =
      kernel_weights(model.kind, model.hyper.lengthscales);
  Eigen::MatrixXd kstar(n, m);
  for (int j = 0; j < m; ++j) {
    if (points[static_cast<std::size_t>(j)].size() !=
        model.hyper.lengthscales.size()) {
      throw std::invalid_argument("posterior: point dimension mismatch");
    }
    for (int i = 0; i < n; ++i) {
      kstar(i, j) = kernel_from_weights(
          model.kind, model.hyper.signal_var, w,
          model.training[static_cast<std::size_t>(i)].theta,
          points[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::MatrixXd kss(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double k = kernel_from_weights(model.kind, model.hyper.signal_var,
                                           w, points[static_cast<std::size_t>(i)],
                                           points[static_cast<std::size_t>(j)]);
      kss(i, j) = k;
      kss(j, i) = k;
    }
  }
  const Eigen::MatrixXd v =
      model.chol.triangularView<Eigen::Lower>().solve(kstar);
  Posterior post;
  post.mean = Eigen::VectorXd::Constant(m, model.hyper.mean_const) +
              kstar.transpose() * model.alpha;
  post.cov = kss - v.transpose() * v;
  return post;
}

ScalarPosterior posterior_point(const GpModel& model,
                                const Eigen::VectorXd& point) {
  const Eigen::VectorXd k = kernel_vector(model, point);
  const Eigen::VectorXd v = model.chol.triangularView<Eigen::Lower>().solve(k);
  ScalarPosterior out;
  out.mean = model.hyper.mean_const + k.dot(model.alpha);
  out.variance = std::max(0.0, model.hyper.signal_var - v.squaredNorm());
  return out;
}

double log_marginal_likelihood(KernelKind kind, const Hyperparameters& hyper,
                               const std::vector<MeasurementRecord>& records) {
  return log_marginal_likelihood_grad(kind, hyper, records, nullptr);
}

double log_marginal_likelihood_grad(
    KernelKind kind, const Hyperparameters& hyper,
    const std::vector<MeasurementRecord>& records, Eigen::VectorXd* grad) {
  validate_hyper(hyper);
  validate_records(records, static_cast<int>(hyper.lengthscales.size()));
  const LmlWorkspace ws = build_workspace(kind, records);
  return lml_core(ws, pack(hyper), grad);
}

Hyperparameters heuristic_hyperparameters(
    const std::vector<MeasurementRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("heuristic_hyperparameters: no records");
  }
  const int n = static_cast<int>(records.size());
  const int dim = static_cast<int>(records[0].theta.size());
  double mean = 0.0;
  for (const MeasurementRecord& rec : records) mean += rec.energy;
  mean /= n;
  double var = 0.0;
  for (const MeasurementRecord& rec : records) {
    var += (rec.energy - mean) * (rec.energy - mean);
  }
  var = (n > 1) ? var / (n - 1) : 0.0;

  Hyperparameters hyper;
  hyper.mean_const = mean;
  hyper.signal_var = std::max(var, 1e-12);
  hyper.lengthscales =
      Eigen::VectorXd::Constant(dim, std::numbers::pi / 2.0);
  return hyper;
}

Mle2Result mle2_fit(KernelKind kind,
                    const std::vector<MeasurementRecord>& records) {
  if (records.size() < 2) {
    throw std::invalid_argument("mle2_fit: need at least 2 records");
  }
  validate_records(records, static_cast<int>(records[0].theta.size()));
  const int dim = static_cast<int>(records[0].theta.size());
  const LmlWorkspace ws = build_workspace(kind, records);

  const double mean = ws.energies.mean();
  const double var =
      (ws.energies.array() - mean).square().sum() / (ws.n - 1);
  const double var0 = std::max(var, 1e-12);
  const double min_e = ws.energies.minCoeff();
  const double max_e = ws.energies.maxCoeff();
  const double range = max_e - min_e;

  Eigen::VectorXd lo(2 + dim);
  Eigen::VectorXd hi(2 + dim);
  lo(0) = min_e - 3.0 * range;
  hi(0) = max_e + 3.0 * range;
  lo(1) = std::log(1e-4 * var0);
  hi(1) = std::log(1e4 * var0);
  for (int a = 0; a < dim; ++a) {
    lo(2 + a) = std::log(0.05);
    hi(2 + a) = std::log(50.0);
  }

  const GradObjectiveFn objective = [&ws](const Eigen::VectorXd& x,
                                          Eigen::VectorXd* grad) {
    const double lml = lml_core(ws, x, grad);
    if (grad) *grad = -*grad;
    return -lml;
  };

  BoxMinimizeOptions options;
  options.max_iterations = 200;

  const double ls_starts[] = {0.1, 1.0, 10.0, 50.0};
  const double var_factors[] = {1.0, 10.0};
  bool have_best = false;
  Eigen::VectorXd best_x;
  double best_f = std::numeric_limits<double>::infinity();
  for (double l0 : ls_starts) {
    for (double vf : var_factors) {
      Eigen::VectorXd x0(2 + dim);
      x0(0) = mean;
      x0(1) = std::log(vf * var0);
      for (int a = 0; a < dim; ++a) x0(2 + a) = std::log(l0);
      const BoxMinimizeResult run = minimize_box(objective, x0, lo, hi, options);
      if (std::isfinite(run.f) && run.f < best_f) {
        best_f = run.f;
        best_x = run.x;
        have_best = true;
      }
    }
  }

  Mle2Result result;
  if (!have_best) {
    result.hyper = heuristic_hyperparameters(records);
    result.used_fallback = true;
    result.log_marginal = lml_core(ws, pack(result.hyper), nullptr);
    return result;
  }
  result.hyper = unpack(best_x);
  result.log_marginal = -best_f;
  return result;
}

std::vector<Eigen::VectorXd> sample_joint(
    const GpModel& model, const std::vector<Eigen::VectorXd>& points,
    int count, Rng& rng) {
  if (count < 1) {
    throw std::invalid_argument("sample_joint: count must be positive");
  }
  const Posterior post = posterior(model, points);
  const int m = static_cast<int>(points.size());
  const Eigen::MatrixXd sym = 0.5 * (post.cov + post.cov.transpose());
  // Eigenvalue square root instead of Cholesky: variance at or below the
  // factorization-noise scale collapses to the mean, so a degenerate
  // posterior (all error bars zero) reproduces training energies exactly.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error(
        "sample_joint: posterior covariance eigendecomposition failed");
  }
  Eigen::VectorXd scale = eig.eigenvalues();
  for (int i = 0; i < m; ++i) {
    scale(i) = scale(i) > kSampleVarianceFloor ? std::sqrt(scale(i)) : 0.0;
  }
  const Eigen::MatrixXd l = eig.eigenvectors() * scale.asDiagonal();
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd z(m);
    for (int i = 0; i < m; ++i) z(i) = rng.normal();
    samples.push_back(post.mean + l * z);
  }
  return samples;
}

}  // namespace vqb
