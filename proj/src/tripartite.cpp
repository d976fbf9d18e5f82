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

#include "bottleneck/tripartite.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "bottleneck/error.hpp"

namespace bottleneck {

TripartiteSource TripartiteSource::from_pure(const PureState& state, const std::string& x,
                                             const std::string& y, const std::string& r) {
  if (state.systems().count() != 3) throw ValidationError("tripartite source needs exactly X, Y, R");
  const PureState ordered = permute_subsystems(state, {x, y, r});
  TripartiteSource s;
  s.d_x = ordered.dims()[0];
  s.d_y = ordered.dims()[1];
  s.d_r = ordered.dims()[2];
  const Eigen::Index cols = static_cast<Eigen::Index>(s.d_y) * s.d_r;
  s.psi.resize(s.d_x, cols);
  for (Eigen::Index i = 0; i < s.d_x; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) s.psi(i, c) = ordered.vector()(i * cols + c);
  }
  s.s_x = gram_entropy(s.psi, nullptr);
  CMatrix psi_y(s.d_y, static_cast<Eigen::Index>(s.d_x) * s.d_r);
  for (int i = 0; i < s.d_x; ++i) {
    for (int a = 0; a < s.d_y; ++a) {
      for (int b = 0; b < s.d_r; ++b) psi_y(a, i * s.d_r + b) = s.psi(i, a * s.d_r + b);
    }
  }
  s.s_y = gram_entropy(psi_y, nullptr);
  CMatrix psi_r(s.d_r, static_cast<Eigen::Index>(s.d_x) * s.d_y);
  for (int i = 0; i < s.d_x; ++i) {
    for (int a = 0; a < s.d_y; ++a) {
      for (int b = 0; b < s.d_r; ++b) psi_r(b, i * s.d_y + a) = s.psi(i, a * s.d_r + b);
    }
  }
  s.s_r = gram_entropy(psi_r, nullptr);
  return s;
}

TripartiteSource TripartiteSource::from_density(const DensityOperator& rho_xy) {
  if (rho_xy.systems().count() != 2) throw ValidationError("rho_XY must have exactly two factors");
  const auto relabeled = rho_xy.relabeled({"X", "Y"});
  return from_pure(purify(relabeled, "R"));
}

PureState TripartiteSource::state() const {
  CVector vec(psi.size());
  for (Eigen::Index i = 0; i < psi.rows(); ++i) {
    for (Eigen::Index c = 0; c < psi.cols(); ++c) vec(i * psi.cols() + c) = psi(i, c);
  }
  return PureState(vec, {d_x, d_y, d_r}, {"X", "Y", "R"});
}

double gram_entropy(const CMatrix& m, CMatrix* grad) {
  const CMatrix rho = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(rho));
  const RVector& lam = es.eigenvalues();
  double s = 0.0;
  RVector h = RVector::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > 1e-30) {
      s -= lam(i) * std::log2(lam(i));
      h(i) = std::log2(lam(i)) + kInvLn2;
    }
  }
  if (grad) {
    const auto& q = es.eigenvectors();
    *grad = -2.0 * (q * h.asDiagonal() * q.adjoint()) * m;
  }
  return std::max(0.0, s);
}

TripartiteEvaluator::TripartiteEvaluator(TripartiteSource source, int d_w, int d_v)
    : source_(std::move(source)), d_w_(d_w), d_v_(d_v) {
  if (d_w < 1 || d_v < 1) throw ValidationError("d_W and d_V must be >= 1");
  if (static_cast<long>(d_w) * d_v < source_.d_x) throw ValidationError("d_W d_V must be >= d_X");
}

namespace {

// sigma has rows (w, v) and columns (y, r). The three reduced operators are
// Gram matrices of reshapes of sigma; `gather` maps gradients back.
struct Reshapes {
  CMatrix w;   // rows w,     cols (v, y, r)
  CMatrix v;   // rows v,     cols (w, y, r)
  CMatrix yw;  // rows (w,y), cols (v, r)
};

Reshapes reshape(const CMatrix& sigma, int dw, int dv, int dy, int dr) {
  const Eigen::Index n = static_cast<Eigen::Index>(dy) * dr;
  Reshapes out;
  out.w.resize(dw, dv * n);
  out.v.resize(dv, dw * n);
  out.yw.resize(static_cast<Eigen::Index>(dw) * dy, static_cast<Eigen::Index>(dv) * dr);
  for (int w = 0; w < dw; ++w) {
    for (int v = 0; v < dv; ++v) {
      for (int y = 0; y < dy; ++y) {
        for (int r = 0; r < dr; ++r) {
          const Complex s = sigma(w * dv + v, y * dr + r);
          out.w(w, v * n + y * dr + r) = s;
          out.v(v, w * n + y * dr + r) = s;
          out.yw(w * dy + y, v * dr + r) = s;
        }
      }
    }
  }
  return out;
}

// Accumulates a * G_w + b * G_v + c * G_yw into sigma coordinates.
CMatrix gather(const Reshapes& g, double a, double b, double c, int dw, int dv, int dy, int dr) {
  const Eigen::Index n = static_cast<Eigen::Index>(dy) * dr;
  CMatrix out(static_cast<Eigen::Index>(dw) * dv, n);
  for (int w = 0; w < dw; ++w) {
    for (int v = 0; v < dv; ++v) {
      for (int y = 0; y < dy; ++y) {
        for (int r = 0; r < dr; ++r) {
          out(w * dv + v, y * dr + r) = a * g.w(w, v * n + y * dr + r) +
                                        b * g.v(v, w * n + y * dr + r) +
                                        c * g.yw(w * dy + y, v * dr + r);
        }
      }
    }
  }
  return out;
}

}  // namespace

TripartiteInfo TripartiteEvaluator::evaluate(const CMatrix& v) const {
  if (v.rows() != static_cast<Eigen::Index>(d_w_) * d_v_ || v.cols() != source_.d_x) {
    throw ValidationError("isometry shape does not match the evaluator");
  }
  const CMatrix sigma = v * source_.psi;
  const Reshapes r = reshape(sigma, d_w_, d_v_, source_.d_y, source_.d_r);
  TripartiteInfo info;
  info.s_w = gram_entropy(r.w, nullptr);
  info.s_v = gram_entropy(r.v, nullptr);
  info.s_yw = gram_entropy(r.yw, nullptr);
  info.i_yr_w = std::max(0.0, source_.s_x + info.s_w - info.s_v);
  info.i_y_w = std::max(0.0, source_.s_y + info.s_w - info.s_yw);
  return info;
}

TripartiteInfo TripartiteEvaluator::evaluate(const CMatrix& v, TripartiteGradient& grad) const {
  if (v.rows() != static_cast<Eigen::Index>(d_w_) * d_v_ || v.cols() != source_.d_x) {
    throw ValidationError("isometry shape does not match the evaluator");
  }
  const int dy = source_.d_y, dr = source_.d_r;
  const CMatrix sigma = v * source_.psi;
  const Reshapes r = reshape(sigma, d_w_, d_v_, dy, dr);
  Reshapes g;
  TripartiteInfo info;
  info.s_w = gram_entropy(r.w, &g.w);
  info.s_v = gram_entropy(r.v, &g.v);
  info.s_yw = gram_entropy(r.yw, &g.yw);
  // Unclamped, so the gradients stay consistent with the values.
  info.i_yr_w = source_.s_x + info.s_w - info.s_v;
  info.i_y_w = source_.s_y + info.s_w - info.s_yw;
  const CMatrix psi_adj = source_.psi.adjoint();
  grad.i_yr_w = gather(g, 1.0, -1.0, 0.0, d_w_, d_v_, dy, dr) * psi_adj;
  grad.i_y_w = gather(g, 1.0, 0.0, -1.0, d_w_, d_v_, dy, dr) * psi_adj;
  return info;
}

CMatrix qr_retract(const CMatrix& y) {
  Eigen::HouseholderQR<CMatrix> qr(y);
  CMatrix q = qr.householderQ() * CMatrix::Identity(y.rows(), y.cols());
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

namespace {

double inner(const CMatrix& a, const CMatrix& b) {
  return (a.array().conjugate() * b.array()).real().sum();
}

CMatrix project_tangent(const CMatrix& v, const CMatrix& g) {
  const CMatrix vg = v.adjoint() * g;
  return g - v * ((vg + vg.adjoint()) * 0.5);
}

}  // namespace

StiefelResult stiefel_descent(const StiefelObjective& f, CMatrix v, int max_iters, double tol) {
  CMatrix g(v.rows(), v.cols());
  double fx = f(v, g);
  CMatrix xi = project_tangent(v, g);
  CMatrix v_prev, xi_prev;
  double step = 1.0;
  int quiet = 0;
  StiefelResult out;
  for (int it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    const double gg = inner(xi, xi);
    if (gg < 1e-28) {
      out.converged = true;
      break;
    }
    if (v_prev.size() == v.size()) {
      const CMatrix s = v - v_prev;
      const CMatrix y = xi - xi_prev;
      const double sy = std::abs(inner(s, y));
      if (sy > 1e-300) step = std::clamp(inner(s, s) / sy, 1e-8, 1e4);
    }
    CMatrix trial, g_trial(v.rows(), v.cols());
    double f_trial = fx;
    bool accepted = false;
    for (int k = 0; k < 50; ++k) {
      trial = qr_retract(v - step * xi);
      f_trial = f(trial, g_trial);
      if (std::isfinite(f_trial) && f_trial <= fx - 1e-4 * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    v_prev = std::move(v);
    xi_prev = std::move(xi);
    v = std::move(trial);
    xi = project_tangent(v, g_trial);
    const double change = std::abs(fx - f_trial);
    fx = f_trial;
    quiet = change <= tol * std::max(1.0, std::abs(fx)) ? quiet + 1 : 0;
    if (quiet >= 3) {
      out.converged = true;
      break;
    }
  }
  out.v = std::move(v);
  out.value = fx;
  return out;
}

RVector finite_difference_gradient(const std::function<double(const RVector&)>& f,
                                   const RVector& x, double step) {
  if (!(step > 0.0)) throw ValidationError("finite-difference step must be positive");
  RVector g(x.size());
  RVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + step;
    const double up = f(probe);
    probe(i) = x(i) - step;
    const double down = f(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * step);
  }
  return g;
}

}  // namespace bottleneck
