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

#include "vqb/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace vqb {

namespace {

Eigen::VectorXd clip(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

// Two-loop recursion; returns the quasi-Newton descent direction -H*g.
Eigen::VectorXd lbfgs_direction(const std::deque<Pair>& memory,
                                const Eigen::VectorXd& grad) {
  Eigen::VectorXd q = grad;
  std::vector<double> a(memory.size());
  for (int i = static_cast<int>(memory.size()) - 1; i >= 0; --i) {
    a[i] = memory[i].rho * memory[i].s.dot(q);
    q -= a[i] * memory[i].y;
  }
  if (!memory.empty()) {
    const Pair& last = memory.back();
    const double gamma = last.s.dot(last.y) / last.y.squaredNorm();
    q *= gamma;
  }
  for (std::size_t i = 0; i < memory.size(); ++i) {
    const double b = memory[i].rho * memory[i].y.dot(q);
    q += (a[i] - b) * memory[i].s;
  }
  return -q;
}

}  // namespace

BoxMinimizeResult minimize_box(const GradObjectiveFn& objective,
                               const Eigen::VectorXd& start,
                               const Eigen::VectorXd& lo,
                               const Eigen::VectorXd& hi,
                               const BoxMinimizeOptions& options) {
  if (start.size() != lo.size() || start.size() != hi.size()) {
    throw std::invalid_argument("minimize_box: dimension mismatch");
  }
  if ((hi.array() < lo.array()).any()) {
    throw std::invalid_argument("minimize_box: empty box");
  }

  const int dim = static_cast<int>(start.size());
  BoxMinimizeResult result;
  result.x = clip(start, lo, hi);

  Eigen::VectorXd grad(dim);
  double f = objective(result.x, &grad);
  result.f = f;
  if (!std::isfinite(f)) return result;

  std::deque<Pair> memory;
  constexpr double armijo = 1e-4;
  constexpr int max_backtracks = 40;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter + 1;

    // Projected-gradient stationarity measure.
    const Eigen::VectorXd pg = result.x - clip(result.x - grad, lo, hi);
    if (pg.lpNorm<Eigen::Infinity>() <= options.projected_grad_tol) {
      result.converged = true;
      return result;
    }

    Eigen::VectorXd dir = lbfgs_direction(memory, grad);
    if (!dir.allFinite() || grad.dot(dir) >= 0.0) {
      memory.clear();
      dir = -grad;
    }

    // Backtracking line search along the projected path.
    double t = 1.0;
    Eigen::VectorXd x_new;
    double f_new = std::numeric_limits<double>::quiet_NaN();
    bool accepted = false;
    for (int bt = 0; bt < max_backtracks; ++bt) {
      x_new = clip(result.x + t * dir, lo, hi);
      const Eigen::VectorXd step = x_new - result.x;
      if (step.lpNorm<Eigen::Infinity>() <= options.step_tol) break;
      f_new = objective(x_new, nullptr);
      if (std::isfinite(f_new) && f_new <= f + armijo * grad.dot(step)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No acceptable step along this direction; treat as converged-in-place.
      result.converged = true;
      return result;
    }

    Eigen::VectorXd grad_new(dim);
    const double f_check = objective(x_new, &grad_new);
    (void)f_check;

    const Eigen::VectorXd s = x_new - result.x;
    Eigen::VectorXd y = grad_new - grad;
    // Armijo backtracking does not enforce the curvature condition, so shift
    // y along s until s.y > 0 (Li-Fukushima regularization). The shift decays
    // with the gradient, keeping the quasi-Newton rate near a minimizer.
    const double ss = s.squaredNorm();
    if (ss > 0.0) {
      const double shift =
          std::max(0.0, -s.dot(y) / ss) + 1e-6 * grad_new.norm();
      y += shift * s;
    }
    const double sy = s.dot(y);
    if (std::isfinite(sy) && sy > 0.0) {
      memory.push_back({s, y, 1.0 / sy});
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }

    const double decrease = f - f_new;
    result.x = x_new;
    f = f_new;
    grad = grad_new;
    result.f = f;

    if (s.lpNorm<Eigen::Infinity>() <= options.step_tol ||
        decrease <= options.f_tol * (1.0 + std::abs(f))) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

BoxMinimizeResult minimize_box_fd(const PlainObjectiveFn& objective,
                                  const Eigen::VectorXd& start,
                                  const Eigen::VectorXd& lo,
                                  const Eigen::VectorXd& hi,
                                  const BoxMinimizeOptions& options) {
  const double h = options.fd_step;
  GradObjectiveFn wrapped = [&objective, h](const Eigen::VectorXd& x,
                                            Eigen::VectorXd* grad) {
    if (grad != nullptr) {
      grad->resize(x.size());
      Eigen::VectorXd probe = x;
      for (int i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double fp = objective(probe);
        probe[i] = x[i] - h;
        const double fm = objective(probe);
        probe[i] = x[i];
        (*grad)[i] = (fp - fm) / (2.0 * h);
      }
    }
    return objective(x);
  };
  return minimize_box(wrapped, start, lo, hi, options);
}

}  // namespace vqb
