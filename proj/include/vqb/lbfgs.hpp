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

#pragma once

#include <Eigen/Core>
#include <functional>

namespace vqb {

/// Objective for box-constrained minimization. When `grad` is non-null the
/// callee must fill it with the gradient at `x`.
using GradObjectiveFn =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

using PlainObjectiveFn = std::function<double(const Eigen::VectorXd& x)>;

struct BoxMinimizeOptions {
  int max_iterations = 200;
  int history = 8;             // L-BFGS memory
  double fd_step = 1e-6;       // central-difference step for minimize_box_fd
  double projected_grad_tol = 1e-9;
  double step_tol = 1e-11;
  double f_tol = 1e-13;        // relative objective-decrease stall threshold
};

struct BoxMinimizeResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;  // false when stopped by max_iterations or a failure
};

/// Projected L-BFGS with Armijo backtracking on the feasible box
/// [lo, hi]. Iterates stay inside the box; the returned point never has a
/// worse objective value than the (clipped) starting point.
BoxMinimizeResult minimize_box(const GradObjectiveFn& objective,
                               const Eigen::VectorXd& start,
                               const Eigen::VectorXd& lo,
                               const Eigen::VectorXd& hi,
                               const BoxMinimizeOptions& options = {});

/// Same minimizer with gradients supplied by central finite differences of
/// width `options.fd_step`.
BoxMinimizeResult minimize_box_fd(const PlainObjectiveFn& objective,
                                  const Eigen::VectorXd& start,
                                  const Eigen::VectorXd& lo,
                                  const Eigen::VectorXd& hi,
                                  const BoxMinimizeOptions& options = {});

}  // namespace vqb
