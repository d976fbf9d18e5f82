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

#include "bottleneck/channels.hpp"

#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "bottleneck/error.hpp"

namespace bottleneck {

CMatrix anti_hermitian_from_params(const RVector& theta, int side) {
  if (theta.size() != static_cast<Eigen::Index>(side) * side) {
    throw ValidationError("isometry parameters must have length (d_W d_V)^2");
  }
  CMatrix a = CMatrix::Zero(side, side);
  Eigen::Index k = 0;
  for (int i = 0; i < side; ++i) a(i, i) = Complex(0.0, theta(k++));
  for (int i = 0; i < side; ++i) {
    for (int j = i + 1; j < side; ++j) {
      const double re = theta(k++);
      const double im = theta(k++);
      a(i, j) = Complex(re, im);
      a(j, i) = Complex(-re, im);
    }
  }
  return a;
}

RVector params_from_anti_hermitian(const CMatrix& a) {
  const int side = static_cast<int>(a.rows());
  RVector theta(static_cast<Eigen::Index>(side) * side);
  Eigen::Index k = 0;
  for (int i = 0; i < side; ++i) theta(k++) = a(i, i).imag();
  for (int i = 0; i < side; ++i) {
    for (int j = i + 1; j < side; ++j) {
      theta(k++) = a(i, j).real();
      theta(k++) = a(i, j).imag();
    }
  }
  return theta;
}

CMatrix expm_anti_hermitian(const CMatrix& a) {
  const CMatrix h = hermitize(CMatrix(Complex(0.0, 1.0) * a));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& q = es.eigenvectors();
  CVector phase(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phase(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
  }
  return q * phase.asDiagonal() * q.adjoint();
}

CMatrix unitary_log(const CMatrix& u) {
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  CVector diag(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) diag(i) = Complex(0.0, std::arg(t(i, i)));
  CMatrix a = q * diag.asDiagonal() * q.adjoint();
  return (a - a.adjoint()) * 0.5;
}

CMatrix complete_to_unitary(const CMatrix& v) {
  const Eigen::Index n = v.rows();
  const Eigen::Index k = v.cols();
  CMatrix stacked(n, n);
  stacked.leftCols(k) = v;
  stacked.rightCols(n - k) = CMatrix::Identity(n, n).rightCols(n - k);
  // Pick the standard basis vectors least aligned with span(v) so the
  // Householder completion stays well conditioned.
  if (n > k) {
    std::vector<std::pair<double, Eigen::Index>> overlap;
    for (Eigen::Index i = 0; i < n; ++i) overlap.emplace_back(v.row(i).squaredNorm(), i);
    std::stable_sort(overlap.begin(), overlap.end());
    for (Eigen::Index c = 0; c < n - k; ++c) {
      stacked.col(k + c) = CMatrix::Identity(n, n).col(overlap[static_cast<std::size_t>(c)].second);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(stacked);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < k; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  q.leftCols(k) = v;
  return q;
}

double isometry_defect(const CMatrix& v) {
  return (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

StinespringIsometry::StinespringIsometry(RVector params, CMatrix matrix, int d_in, int d_w,
                                         int d_v)
    : params_(std::move(params)), matrix_(std::move(matrix)), d_in_(d_in), d_w_(d_w), d_v_(d_v) {}

StinespringIsometry StinespringIsometry::from_params(RVector theta, int d_in, int d_w, int d_v) {
  if (d_in < 1 || d_w < 1 || d_v < 1) throw ValidationError("isometry dimensions must be positive");
  const int side = d_w * d_v;
  if (side < d_in) throw ValidationError("isometry needs d_W d_V >= d_in");
  const CMatrix u = expm_anti_hermitian(anti_hermitian_from_params(theta, side));
  CMatrix v = u.leftCols(d_in);
  if (isometry_defect(v) > kIsometryTolerance) {
    throw ValidationError("isometry parameters produce a non-isometric matrix");
  }
  return StinespringIsometry(std::move(theta), std::move(v), d_in, d_w, d_v);
}

StinespringIsometry StinespringIsometry::from_matrix(const CMatrix& v, int d_w, int d_v) {
  if (v.rows() != static_cast<Eigen::Index>(d_w) * d_v) {
    throw ValidationError("isometry matrix rows must equal d_W d_V");
  }
  if (isometry_defect(v) > 1e-8) throw ValidationError("matrix is not an isometry");
  const CMatrix u = complete_to_unitary(v);
  return from_params(params_from_anti_hermitian(unitary_log(u)), static_cast<int>(v.cols()), d_w,
                     d_v);
}

CMatrix StinespringIsometry::kraus(int i) const {
  if (i < 0 || i >= d_v_) throw ValidationError("Kraus index out of range");
  CMatrix k(d_w_, d_in_);
  for (int w = 0; w < d_w_; ++w) k.row(w) = matrix_.row(w * d_v_ + i);
  return k;
}

RVector random_channel_params(std::uint64_t seed, int d_in, int d_w, int d_v) {
  if (d_in < 1 || d_w < 1 || d_v < 1 || d_w * d_v < d_in) {
    throw ValidationError("random_channel_params: invalid dimensions");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-std::numbers::pi, std::numbers::pi);
  const Eigen::Index n = static_cast<Eigen::Index>(d_w * d_v) * (d_w * d_v);
  RVector theta(n);
  for (Eigen::Index i = 0; i < n; ++i) theta(i) = unif(rng);
  return theta;
}

PureState stinespring_extend(const StinespringIsometry& v, const PureState& psi,
                             const std::string& acted, const std::string& w_label,
                             const std::string& v_label) {
  const std::size_t pos = psi.systems().index_of(acted);
  if (psi.dims()[pos] != v.d_in()) {
    throw ValidationError("stinespring_extend: acted subsystem dimension differs from d_in");
  }
  // Move the acted factor to the front, apply, then restore the order.
  Names order{acted};
  for (const auto& l : psi.labels()) {
    if (l != acted) order.push_back(l);
  }
  const PureState front = permute_subsystems(psi, order);
  const Eigen::Index rest = front.vector().size() / v.d_in();
  const Eigen::Index out_rows = v.matrix().rows();
  CVector out = CVector::Zero(out_rows * rest);
  for (Eigen::Index x = 0; x < v.d_in(); ++x) {
    for (Eigen::Index e = 0; e < rest; ++e) {
      const Complex amp = front.vector()(x * rest + e);
      if (amp == Complex(0.0, 0.0)) continue;
      for (Eigen::Index r = 0; r < out_rows; ++r) out(r * rest + e) += v.matrix()(r, x) * amp;
    }
  }
  std::vector<int> dims{v.d_w(), v.d_v()};
  Names labels{w_label, v_label};
  for (std::size_t i = 1; i < order.size(); ++i) {
    dims.push_back(front.dims()[i]);
    labels.push_back(order[i]);
  }
  PureState extended(std::move(out), std::move(dims), labels);
  Names restored;
  for (const auto& l : psi.labels()) {
    if (l == acted) {
      restored.push_back(w_label);
      restored.push_back(v_label);
    } else {
      restored.push_back(l);
    }
  }
  return permute_subsystems(extended, restored);
}

DensityOperator apply_channel(const StinespringIsometry& v, const DensityOperator& rho,
                              const std::string& acted, const std::string& w_label) {
  const std::size_t pos = rho.systems().index_of(acted);
  if (rho.dims()[pos] != v.d_in()) {
    throw ValidationError("apply_channel: acted subsystem dimension differs from d_in");
  }
  Names order{acted};
  for (const auto& l : rho.labels()) {
    if (l != acted) order.push_back(l);
  }
  const DensityOperator front = permute_subsystems(rho, order);
  const Eigen::Index rest = front.dim() / v.d_in();
  const Eigen::Index dw = v.d_w();
  const Eigen::Index dv = v.d_v();
  // out[(w,e),(w',e')] = sum_{k,x,x'} K_k(w,x) rho[(x,e),(x',e')] conj(K_k(w',x')).
  CMatrix out = CMatrix::Zero(dw * rest, dw * rest);
  const CMatrix& m = front.matrix();
  for (int k = 0; k < dv; ++k) {
    const CMatrix kr = v.kraus(k);
    const CMatrix big = Eigen::kroneckerProduct(kr, CMatrix::Identity(rest, rest));
    out += big * m * big.adjoint();
  }
  out = hermitize(out);
  std::vector<int> dims{v.d_w()};
  Names labels{w_label};
  for (std::size_t i = 1; i < order.size(); ++i) {
    dims.push_back(front.dims()[i]);
    labels.push_back(order[i]);
  }
  DensityOperator result(std::move(out), std::move(dims), labels);
  Names restored;
  for (const auto& l : rho.labels()) restored.push_back(l == acted ? w_label : l);
  return permute_subsystems(result, restored);
}

FlaggedChannel::FlaggedChannel(StinespringIsometry n0, StinespringIsometry n1, double lambda)
    : n0_(std::move(n0)), n1_(std::move(n1)), lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("flagged_mix: lambda outside [0,1]");
  if (n0_.d_in() != n1_.d_in() || n0_.d_w() != n1_.d_w()) {
    throw ValidationError("flagged_mix: branches must share d_in and d_W");
  }
}

DensityOperator FlaggedChannel::apply(const DensityOperator& rho, const std::string& acted,
                                      const std::string& w_label,
                                      const std::string& flag_label) const {
  const CMatrix out0 = apply_channel(n0_, rho, acted, w_label).matrix();
  const CMatrix out1 = apply_channel(n1_, rho, acted, w_label).matrix();
  const Eigen::Index n = out0.rows();
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  // Flag is the last (least significant) factor: index = base * 2 + flag.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(2 * i, 2 * j) = lambda_ * out0(i, j);
      m(2 * i + 1, 2 * j + 1) = (1.0 - lambda_) * out1(i, j);
    }
  }
  std::vector<int> dims;
  Names labels;
  for (const auto& l : rho.labels()) {
    labels.push_back(l == acted ? w_label : l);
    dims.push_back(l == acted ? n0_.d_w() : rho.systems().dim_of(l));
  }
  dims.push_back(2);
  labels.push_back(flag_label);
  return DensityOperator(std::move(m), std::move(dims), std::move(labels));
}

FlaggedChannel flagged_mix(const StinespringIsometry& n0, const StinespringIsometry& n1,
                           double lambda) {
  return FlaggedChannel(n0, n1, lambda);
}

StinespringIsometry classical_to_quantum_channel(const ConditionalChannel& c) {
  const int nx = c.size_x();
  const int nw = c.size_w();
  const int dv = nx * nw;
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(nw) * dv, nx);
  for (int x = 0; x < nx; ++x) {
    for (int w = 0; w < nw; ++w) v(w * dv + x * nw + w, x) = std::sqrt(c.rows()(x, w));
  }
  return StinespringIsometry::from_matrix(v, nw, dv);
}

StinespringIsometry constant_isometry(int d_in, int d_w, int d_v) {
  if (d_v < d_in) throw ValidationError("constant channel needs d_V >= d_in");
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d_w) * d_v, d_in);
  for (int x = 0; x < d_in; ++x) v(x, x) = 1.0;  // w = 0, v = x
  return StinespringIsometry::from_matrix(v, d_w, d_v);
}

StinespringIsometry identity_isometry(int d_in, int d_w, int d_v) {
  if (d_w < d_in) throw ValidationError("identity channel needs d_W >= d_in");
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d_w) * d_v, d_in);
  for (int x = 0; x < d_in; ++x) v(static_cast<Eigen::Index>(x) * d_v, x) = 1.0;
  return StinespringIsometry::from_matrix(v, d_w, d_v);
}

StinespringIsometry dephasing_isometry(const CMatrix& basis, int d_w, int d_v) {
  const int d_in = static_cast<int>(basis.rows());
  if (d_w < d_in || d_v < d_in) throw ValidationError("dephasing channel needs d_W, d_V >= d_in");
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d_w) * d_v, d_in);
  for (int x = 0; x < d_in; ++x) {
    v.row(static_cast<Eigen::Index>(x) * d_v + x) = basis.col(x).adjoint();
  }
  return StinespringIsometry::from_matrix(v, d_w, d_v);
}

CMatrix embed_isometry(const CMatrix& v, int d_w, int d_v, int new_d_w, int new_d_v) {
  if (new_d_w < d_w || new_d_v < d_v) throw ValidationError("embed_isometry: cannot shrink");
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(new_d_w) * new_d_v, v.cols());
  for (int w = 0; w < d_w; ++w) {
    for (int e = 0; e < d_v; ++e) {
      out.row(static_cast<Eigen::Index>(w) * new_d_v + e) = v.row(static_cast<Eigen::Index>(w) * d_v + e);
    }
  }
  return out;
}

}  // namespace bottleneck
