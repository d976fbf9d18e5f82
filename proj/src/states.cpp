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

#include "bottleneck/states.hpp"

#include <cmath>
#include <random>

#include "bottleneck/classical_ib.hpp"
#include "bottleneck/error.hpp"

namespace bottleneck {

DensityOperator rho3(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("rho3: p outside [0,1]");
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = p / 2.0;
  m(0, 3) = p / 2.0;
  m(3, 0) = p / 2.0;
  m(3, 3) = p / 2.0 + (1.0 - p);
  return DensityOperator(m, {2, 2}, {"X", "Y"});
}

DensityOperator bsc_state(double delta) { return embed_classical_joint(bsc_joint(delta)); }

JointDistribution correlated_bits() {
  RMatrix t(2, 2);
  t << 0.5, 0.0, 0.0, 0.5;
  return JointDistribution(t);
}

namespace {

CVector gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

int product(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) {
    if (d < 1) throw ValidationError("dimensions must be >= 1");
    n *= d;
  }
  return n;
}

}  // namespace

PureState random_pure(std::uint64_t seed, const std::vector<int>& dims,
                      const std::vector<std::string>& labels) {
  std::mt19937_64 rng(seed);
  CVector v = gaussian_vector(rng, product(dims));
  v /= v.norm();
  return PureState(v, dims, labels);
}

DensityOperator random_pure_two_qubit(std::uint64_t seed) {
  return random_pure(seed, {2, 2}, {"X", "Y"}).density();
}

JointDistribution random_joint(std::uint64_t seed, int size_x, int size_y) {
  if (size_x < 1 || size_y < 1) throw ValidationError("alphabet sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  RMatrix t(size_x, size_y);
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = e(rng) + 1e-9;
  return JointDistribution(t / t.sum());
}

DensityOperator random_density(std::uint64_t seed, const std::vector<int>& dims,
                               const std::vector<std::string>& labels) {
  const int n = product(dims);
  std::mt19937_64 rng(seed);
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) g.col(j) = gaussian_vector(rng, n);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(hermitize(m), dims, labels);
}

DensityOperator random_product_state(std::uint64_t seed, int d_x, int d_y) {
  const auto a = random_density(seed, {d_x}, {"X"});
  const auto b = random_density(seed ^ 0x9e3779b97f4a7c15ULL, {d_y}, {"Y"});
  return tensor_product(a, b);
}

JointDistribution diagonal_joint(const DensityOperator& rho_xy) {
  if (rho_xy.systems().count() != 2) throw ValidationError("rho_XY must have exactly two factors");
  const CMatrix& m = rho_xy.matrix();
  const RMatrix off = (m - CMatrix(m.diagonal().asDiagonal())).cwiseAbs();
  if (off.maxCoeff() > 1e-12) throw ValidationError("state is not diagonal in the product basis");
  const int dx = rho_xy.dims()[0], dy = rho_xy.dims()[1];
  RMatrix t(dx, dy);
  for (int x = 0; x < dx; ++x) {
    for (int y = 0; y < dy; ++y) t(x, y) = std::max(0.0, m(x * dy + y, x * dy + y).real());
  }
  return JointDistribution(t / t.sum());
}

}  // namespace bottleneck
