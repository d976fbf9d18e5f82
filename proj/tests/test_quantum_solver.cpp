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
#include <gtest/gtest.h>

#include <cmath>

#include "bottleneck/channels.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/parallel.hpp"
#include "bottleneck/quantum_solver.hpp"
#include "bottleneck/states.hpp"
#include "bottleneck/tripartite.hpp"

using namespace bottleneck;

namespace {

SolverConfig quick(std::uint64_t seed = 1) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 4;
  cfg.max_iters = 200;
  return cfg;
}

RVector flatten(const CMatrix& m) {
  RVector x(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    x(2 * i) = m(i).real();
    x(2 * i + 1) = m(i).imag();
  }
  return x;
}

CMatrix unflatten(const RVector& x, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(x(2 * i), x(2 * i + 1));
  return m;
}

}  // namespace

TEST(Tripartite, FastEvaluatorMatchesStinespringPath) {
  const auto rho = rho3(0.4);
  const auto src = TripartiteSource::from_density(rho);
  const TripartiteEvaluator ev(src, 3, 6);
  for (int i = 0; i < 10; ++i) {
    const auto v = StinespringIsometry::from_params(random_channel_params(i, 2, 3, 6), 2, 3, 6);
    const auto info = ev.evaluate(v.matrix());
    const auto sigma = stinespring_extend(v, src.state(), "X");
    EXPECT_NEAR(info.i_yr_w, mutual_information(sigma, {"Y", "R"}, {"W"}), 1e-10);
    EXPECT_NEAR(info.i_y_w, mutual_information(sigma, {"Y"}, {"W"}), 1e-10);
  }
}

TEST(Tripartite, GramEntropyGradientMatchesFiniteDifferences) {
  CMatrix m = unflatten(random_channel_params(5, 2, 4, 1) * 0.2, 2, 4);
  m /= std::sqrt((m * m.adjoint()).trace().real());
  CMatrix grad;
  gram_entropy(m, &grad);
  const auto f = [&](const RVector& x) { return gram_entropy(unflatten(x, 2, 4), nullptr); };
  const RVector fd = finite_difference_gradient(f, flatten(m), 1e-6);
  EXPECT_LE((fd - flatten(grad)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Tripartite, EvaluatorGradientMatchesFiniteDifferences) {
  const auto src = TripartiteSource::from_density(random_density(3, {2, 2}, {"X", "Y"}));
  const TripartiteEvaluator ev(src, 2, 4);
  const CMatrix v = StinespringIsometry::from_params(random_channel_params(8, 2, 2, 4), 2, 2, 4).matrix();
  TripartiteGradient g;
  ev.evaluate(v, g);
  // Off the manifold only the W-side entropies move; S(X) is constant.
  const auto f = [&](const RVector& x) {
    TripartiteGradient unused;
    return ev.evaluate(unflatten(x, v.rows(), v.cols()), unused).i_yr_w;
  };
  const RVector fd = finite_difference_gradient(f, flatten(v), 1e-6);
  EXPECT_LE((fd - flatten(g.i_yr_w)).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Tripartite, StiefelDescentStaysOnManifold) {
  const auto src = TripartiteSource::from_density(rho3(0.4));
  const TripartiteEvaluator ev(src, 3, 6);
  const double beta = 3.0;
  StiefelObjective f = [&](const CMatrix& v, CMatrix& g) {
    TripartiteGradient gg;
    const auto i = ev.evaluate(v, gg);
    g = gg.i_yr_w - beta * gg.i_y_w;
    return i.i_yr_w - beta * i.i_y_w;
  };
  const CMatrix v0 = StinespringIsometry::from_params(random_channel_params(2, 2, 3, 6), 2, 3, 6).matrix();
  CMatrix g0;
  const double start = f(v0, g0);
  const auto r = stiefel_descent(f, v0, 300, 1e-10);
  EXPECT_LE(r.value, start);
  EXPECT_LE(isometry_defect(r.v), 1e-10);
}

TEST(Objective, BetaZeroEndpoints) {
  const auto src = TripartiteSource::from_density(rho3(0.4));
  const auto psi = src.state();
  const auto id = identity_isometry(2, 2, 2);
  const auto cst = constant_isometry(2, 2, 2);
  EXPECT_NEAR(ib_objective(id.params(), psi, 0.0, 2, 2).lagrangian, 2.0 * src.s_x, 1e-9);
  EXPECT_NEAR(ib_objective(cst.params(), psi, 0.0, 2, 2).lagrangian, 0.0, 1e-9);
}

TEST(Equivalence, IdentityConstantAndRandom) {
  const auto rho = random_density(11, {3, 2}, {"X", "Y"});
  EXPECT_LE(equivalence_check(identity_isometry(3, 3, 3), rho).gap, 1e-9);
  EXPECT_LE(equivalence_check(constant_isometry(3, 3, 3), rho).gap, 1e-9);
  for (int i = 0; i < 20; ++i) {
    const auto v = StinespringIsometry::from_params(random_channel_params(i, 3, 3, 9), 3, 3, 9);
    EXPECT_LE(equivalence_check(v, rho).gap, 1e-8);
  }
}

TEST(QuantumIb, CurveIsConvexAndWitnessesReplay) {
  const auto rho = rho3(0.4);
  const double i_xy = mutual_information(rho, {"X"}, {"Y"});
  const auto c = quantum_ib_curve(rho, quick(), linear_grid(0.0, i_xy, 6));
  EXPECT_EQ(c.kind, "quantum-ib");
  EXPECT_NEAR(c.points.front().value, 0.0, 1e-9);
  EXPECT_TRUE(convexity_check(c, 1e-3).pass);
  for (const auto& pt : c.points) {
    const auto [r, a] = replay_witness(std::get<QuantumWitness>(pt.witness), rho);
    EXPECT_NEAR(r, pt.value, 1e-8);
    EXPECT_GE(a, pt.abscissa - 1e-6);
  }
  EXPECT_THROW(quantum_ib_curve(rho, quick(), {0.0, i_xy + 0.1}), InfeasibleError);
}

TEST(QuantumIb, PureStateDiagonal) {
  const auto rho = random_pure_two_qubit(4);
  const double i_xy = mutual_information(rho, {"X"}, {"Y"});
  const auto c = normalize_curve(quantum_ib_curve(rho, quick(), linear_grid(0.0, i_xy, 5)), rho,
                                 NormalizeMode::kBottleneck);
  for (const auto& pt : c.points) EXPECT_NEAR(pt.value, pt.abscissa, 5e-3);
}

TEST(QuantumIb, ClassicalRestrictionCappedAtHalf) {
  const auto rho = embed_classical_joint(random_joint(6, 2, 3));
  const double i_xy = mutual_information(rho, {"X"}, {"Y"});
  const auto c = normalize_curve(quantum_ib_curve_classical_w(rho, quick(), linear_grid(0.0, i_xy, 6)), rho,
                                 NormalizeMode::kBottleneck);
  for (const auto& pt : c.points) EXPECT_LE(pt.value, 0.5 + 1e-6);
  EXPECT_THROW(quantum_ib_curve_classical_w(rho3(0.4), quick(), {0.0}), ValidationError);
}

TEST(QuantumPf, ZeroAtOriginAndModeChecked) {
  const auto rho = rho3(0.4);
  const auto c = quantum_pf_curve(rho, quick(), linear_grid(0.0, 2.0 * entropy_of(rho, {"X"}), 5));
  EXPECT_NEAR(c.points.front().value, 0.0, 1e-9);
  EXPECT_THROW(normalize_curve(c, rho, NormalizeMode::kBottleneck), ValidationError);
  const auto product = random_product_state(2, 2, 2);
  EXPECT_THROW(normalize_curve(c, product, NormalizeMode::kFunnel), ValidationError);
}

TEST(QuantumIb, DeterministicAcrossThreadCounts) {
  const auto rho = rho3(0.2);
  const auto grid = linear_grid(0.0, mutual_information(rho, {"X"}, {"Y"}), 4);
  setenv("BOTTLENECK_LAB_THREADS", "1", 1);
  const auto a = quantum_ib_curve(rho, quick(9), grid);
  setenv("BOTTLENECK_LAB_THREADS", "3", 1);
  const auto b = quantum_ib_curve(rho, quick(9), grid);
  unsetenv("BOTTLENECK_LAB_THREADS");
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(a.points[i].value, b.points[i].value);
}
