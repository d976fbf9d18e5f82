// Copyright 2026 The Bottleneck Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace bottleneck {

struct DescentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Gradient descent with Barzilai-Borwein trial steps and Armijo
/// backtracking. `f(x, grad)` returns the objective and fills `grad`.
/// Stops once the relative objective change stays below `tol` for three
/// consecutive accepted steps.
template <typename Objective>
DescentResult descend(Objective&& f, Eigen::VectorXd x, int max_iters, double tol) {
  Eigen::VectorXd g(x.size());
  double fx = f(x, g);
  double step = 1.0;
  Eigen::VectorXd x_prev, g_prev;
  int quiet = 0;
  DescentResult out;
  for (int it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    const double gg = g.squaredNorm();
    if (gg < 1e-30) {
      out.converged = true;
      break;
    }
    if (x_prev.size() == x.size()) {
      const Eigen::VectorXd s = x - x_prev;
      const Eigen::VectorXd y = g - g_prev;
      const double sy = s.dot(y);
      if (sy > 1e-300) step = std::clamp(s.squaredNorm() / sy, 1e-8, 1e8);
    }
    Eigen::VectorXd trial(x.size()), g_trial(x.size());
    double f_trial = fx;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      trial = x - step * g;
      f_trial = f(trial, g_trial);
      if (std::isfinite(f_trial) && f_trial <= fx - 1e-4 * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;  // no descent direction left at machine precision
      break;
    }
    x_prev = x;
    g_prev = g;
    const double change = std::abs(fx - f_trial);
    x = trial;
    g = g_trial;
    fx = f_trial;
    quiet = change <= tol * std::max(1.0, std::abs(fx)) ? quiet + 1 : 0;
    if (quiet >= 3) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  return out;
}

}  // namespace bottleneck
