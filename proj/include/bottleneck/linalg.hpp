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

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace bottleneck {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

/// Hermitian part (M + M^dagger) / 2.
template <typename Derived>
auto hermitize(const Eigen::MatrixBase<Derived>& m) {
  return ((m + m.adjoint()) * typename Derived::RealScalar(0.5)).eval();
}

/// -x log2 x with the 0 log 0 = 0 convention.
template <typename Scalar>
Scalar entropy_term(Scalar x) {
  return x > Scalar(0) ? -x * std::log2(x) : Scalar(0);
}

/// Shannon entropy in bits of a nonnegative vector (not renormalized).
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::DenseBase<Derived>& p) {
  typename Derived::Scalar s(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) s += entropy_term(p(i));
  return s;
}

/// Spectrum of a Hermitian matrix with small negative eigenvalues clipped to
/// zero. `clipped` accumulates the discarded negative mass.
template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> clipped_spectrum(
    const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar* clipped = nullptr) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> es(hermitize(m), Eigen::EigenvaluesOnly);
  auto ev = es.eigenvalues().eval();
  typename Derived::RealScalar neg(0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0) {
      neg -= ev(i);
      ev(i) = 0;
    }
  }
  if (clipped) *clipped = neg;
  return ev;
}

}  // namespace bottleneck
