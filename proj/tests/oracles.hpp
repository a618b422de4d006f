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

// Test-only reference implementations, deliberately independent of the
// library's numerical paths: kernels rewritten from the closed forms, GP
// posteriors and likelihoods via explicit LU inversion instead of Cholesky
// solves, and the lowest eigenvalue via shifted power iteration instead of a
// symmetric eigensolver.

#ifndef VQB_TESTS_ORACLES_HPP_
#define VQB_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "vqb/gp.hpp"
#include "vqb/shots.hpp"

namespace vqb_test {

inline double oracle_kernel(vqb::KernelKind kind,
                            const vqb::Hyperparameters& hyper,
                            const Eigen::VectorXd& a,
                            const Eigen::VectorXd& b) {
  double expo = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double d = a(i) - b(i);
    const double l = hyper.lengthscales(i);
    if (kind == vqb::KernelKind::kRbf) {
      expo += d * d / (2.0 * l * l);
    } else {
      const double sn = std::sin(0.5 * d);
      expo += 2.0 * sn * sn / (l * l);
    }
  }
  return hyper.signal_var * std::exp(-expo);
}

inline Eigen::MatrixXd oracle_training_cov(
    vqb::KernelKind kind, const vqb::Hyperparameters& hyper,
    const std::vector<vqb::MeasurementRecord>& records, double jitter) {
  const int n = static_cast<int>(records.size());
  Eigen::MatrixXd ktilde(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ktilde(i, j) =
          oracle_kernel(kind, hyper, records[i].theta, records[j].theta);
    }
    ktilde(i, i) += records[i].std_error * records[i].std_error + jitter;
  }
  return ktilde;
}

struct OraclePosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// GP posterior by explicit matrix inversion.
inline OraclePosterior dense_posterior(
    vqb::KernelKind kind, const vqb::Hyperparameters& hyper,
    const std::vector<vqb::MeasurementRecord>& records,
    const std::vector<Eigen::VectorXd>& points, double jitter) {
  const int n = static_cast<int>(records.size());
  const int m = static_cast<int>(points.size());
  const Eigen::MatrixXd kinv =
      oracle_training_cov(kind, hyper, records, jitter).inverse();
  Eigen::MatrixXd kstar(n, m);
  Eigen::MatrixXd kss(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      kstar(i, j) = oracle_kernel(kind, hyper, records[i].theta, points[j]);
    }
    for (int i = 0; i < m; ++i) {
      kss(i, j) = oracle_kernel(kind, hyper, points[i], points[j]);
    }
  }
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r(i) = records[i].energy - hyper.mean_const;
  OraclePosterior out;
  out.mean = Eigen::VectorXd::Constant(m, hyper.mean_const) +
             kstar.transpose() * kinv * r;
  out.cov = kss - kstar.transpose() * kinv * kstar;
  return out;
}

// Log marginal likelihood from the explicit inverse and determinant.
inline double dense_lml(vqb::KernelKind kind,
                        const vqb::Hyperparameters& hyper,
                        const std::vector<vqb::MeasurementRecord>& records,
                        double jitter) {
  const int n = static_cast<int>(records.size());
  const Eigen::MatrixXd ktilde =
      oracle_training_cov(kind, hyper, records, jitter);
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r(i) = records[i].energy - hyper.mean_const;
  return -0.5 * r.dot(ktilde.inverse() * r) -
         0.5 * std::log(ktilde.determinant()) -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

// Lowest eigenvalue of a Hermitian matrix by power iteration on c*I - H,
// c a Gershgorin upper bound on the spectrum. Deterministic start vector.
inline double min_eigenvalue_power(const Eigen::MatrixXcd& h,
                                   int iterations = 50000) {
  const Eigen::Index n = h.rows();
  double c = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) row += std::abs(h(i, j));
    c = std::max(c, row);
  }
  c += 1.0;
  const Eigen::MatrixXcd m =
      c * Eigen::MatrixXcd::Identity(n, n) - h;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    v(i) = std::complex<double>(std::cos(x + 1.0), std::sin(0.7 * x + 0.3));
  }
  v.normalize();
  for (int it = 0; it < iterations; ++it) {
    v = m * v;
    v.normalize();
  }
  const double top = v.dot(m * v).real();
  return c - top;
}

}  // namespace vqb_test

#endif  // VQB_TESTS_ORACLES_HPP_
