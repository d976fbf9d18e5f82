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
#include <functional>

#include "bottleneck/linalg.hpp"
#include "bottleneck/quantum_core.hpp"

namespace bottleneck {

/// Pure source psi_XYR stored as the d_X x (d_Y d_R) coefficient matrix.
struct TripartiteSource {
  CMatrix psi;
  int d_x = 0;
  int d_y = 0;
  int d_r = 0;
  double s_x = 0.0;  // S(X) = S(YR)
  double s_y = 0.0;
  double s_r = 0.0;  // S(R) = S(XY)

  double mutual_information_xy() const { return std::max(0.0, s_x + s_y - s_r); }

  /// `state` must carry the three named factors (any order, no others).
  static TripartiteSource from_pure(const PureState& state, const std::string& x = "X",
                                    const std::string& y = "Y", const std::string& r = "R");
  /// Purifies rho_XY (first factor X, second Y) with reference R.
  static TripartiteSource from_density(const DensityOperator& rho_xy);

  PureState state() const;  // factors X, Y, R
};

/// Information quantities of sigma_WVYR = (V (x) 1) psi_XYR.
struct TripartiteInfo {
  double i_yr_w = 0.0;  // I(YR;W)
  double i_y_w = 0.0;   // I(Y;W)
  double s_w = 0.0;
  double s_v = 0.0;
  double s_yw = 0.0;
};

/// Euclidean gradients with respect to the isometry matrix under the real
/// inner product Re tr(A^dagger B).
struct TripartiteGradient {
  CMatrix i_yr_w;
  CMatrix i_y_w;
};

class TripartiteEvaluator {
 public:
  TripartiteEvaluator(TripartiteSource source, int d_w, int d_v);

  const TripartiteSource& source() const { return source_; }
  int d_w() const { return d_w_; }
  int d_v() const { return d_v_; }

  TripartiteInfo evaluate(const CMatrix& v) const;
  TripartiteInfo evaluate(const CMatrix& v, TripartiteGradient& grad) const;

 private:
  TripartiteSource source_;
  int d_w_;
  int d_v_;
};

/// Entropy of M M^dagger in bits and, if `grad` is given, its Euclidean gradient in M.
double gram_entropy(const CMatrix& m, CMatrix* grad);

struct StiefelResult {
  CMatrix v;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// f(V, G) returns the objective and fills the Euclidean gradient G.
using StiefelObjective = std::function<double(const CMatrix&, CMatrix&)>;

/// Riemannian gradient descent over isometries (V^dagger V = 1): tangent
/// projection, QR retraction, Barzilai-Borwein trial steps, Armijo backtracking.
StiefelResult stiefel_descent(const StiefelObjective& f, CMatrix v0, int max_iters, double tol);

/// Orthonormalizes the columns of `y` with positive real diagonal in R.
CMatrix qr_retract(const CMatrix& y);

/// Central-difference gradient of a scalar function of a real vector.
RVector finite_difference_gradient(const std::function<double(const RVector&)>& f,
                                   const RVector& x, double step);

}  // namespace bottleneck
