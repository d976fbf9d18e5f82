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

#include "bottleneck/channels.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/rate_region.hpp"
#include "bottleneck/states.hpp"

using namespace bottleneck;

namespace {

SolverConfig quick() {
  SolverConfig cfg;
  cfg.seed = 2;
  cfg.restarts = 4;
  cfg.max_iters = 200;
  return cfg;
}

}  // namespace

TEST(RateRegion, PurityComplementIdentity) {
  const auto psi = purify(rho3(0.4), "R");
  for (int i = 0; i < 20; ++i) {
    const auto v = StinespringIsometry::from_params(random_channel_params(i, 2, 3, 6), 2, 3, 6);
    EXPECT_LE(purity_complement_check(v, psi), 1e-9);
  }
}

TEST(RateRegion, ProductSourceIsFlat) {
  const auto rho = random_product_state(5, 2, 2);
  const auto b = wak_boundary(purify(rho, "R"), linear_grid(0.0, entropy_of(rho, {"X"}), 5), quick());
  const double h_y = entropy_of(rho, {"Y"});
  for (const auto& p : b.points) EXPECT_NEAR(p.q_y, h_y, 1e-2);
}

TEST(RateRegion, EndpointsAndMonotonicity) {
  const auto rho = rho3(0.4);
  const double s_x = entropy_of(rho, {"X"});
  const double h_y = entropy_of(rho, {"Y"});
  const double i_xy = mutual_information(rho, {"X"}, {"Y"});
  const auto b = wak_boundary(purify(rho, "R"), linear_grid(0.0, s_x, 6), quick());
  EXPECT_NO_THROW(b.validate());
  EXPECT_NEAR(b.points.front().q_y, h_y, 1e-9);
  // Q_X = S(X) allows the identity channel: Q_Y = H(Y) - I(X;Y)/2.
  EXPECT_NEAR(b.points.back().q_y, h_y - 0.5 * i_xy, 1e-6);
  for (std::size_t i = 1; i < b.points.size(); ++i) EXPECT_LE(b.points[i].q_y, b.points[i - 1].q_y + 1e-9);
  EXPECT_THROW(wak_boundary(purify(rho, "R"), {0.0, s_x + 0.5}, quick()), ValidationError);
}

TEST(RateRegion, DoubledSourceAndProductIsometry) {
  const auto psi = purify(rho3(0.4), "R");
  const auto two = doubled_source(psi);
  EXPECT_EQ(two.labels(), (std::vector<std::string>{"X", "Y", "R"}));
  EXPECT_NEAR(entropy_of(two, {"X"}), 2.0 * entropy_of(psi, {"X"}), 1e-10);
  const auto v = StinespringIsometry::from_params(random_channel_params(1, 2, 2, 2), 2, 2, 2);
  const CMatrix pv = product_isometry(v.matrix(), v.matrix(), 2, 2);
  EXPECT_EQ(pv.rows(), 16);
  EXPECT_LE(isometry_defect(pv), 1e-12);
  EXPECT_EQ(state_fingerprint(psi), state_fingerprint(psi));
}

TEST(RateRegion, CorrelatedBitsHalfRate) {
  // Measure-and-copy: I(Y;W) = 1 at I(W;YR) = 1, so Q_X = 1/2 gives Q_Y = 1/2.
  const auto rho = embed_classical_joint(correlated_bits());
  const auto b = wak_boundary(purify(rho, "R"), {0.0, 0.25, 0.5}, quick());
  EXPECT_NEAR(b.points[2].q_y, 0.5, 1e-2);
  EXPECT_NEAR(b.points[0].q_y, 1.0, 1e-9);
}
