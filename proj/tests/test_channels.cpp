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
#include "bottleneck/states.hpp"

using namespace bottleneck;

namespace {

// sum_v K_v rho K_v^dag with K_v read straight off the isometry rows w * d_V + v.
CMatrix kraus_sum(const CMatrix& iso, const CMatrix& rho, int d_w, int d_v) {
  CMatrix out = CMatrix::Zero(d_w, d_w);
  for (int v = 0; v < d_v; ++v) {
    CMatrix k(d_w, iso.cols());
    for (int w = 0; w < d_w; ++w) k.row(w) = iso.row(w * d_v + v);
    out += k * rho * k.adjoint();
  }
  return out;
}

}  // namespace

TEST(Stinespring, ZeroParamsIsIdentity) {
  const auto v = StinespringIsometry::from_params(RVector::Zero(4), 2, 2, 1);
  EXPECT_TRUE(v.matrix().isApprox(CMatrix::Identity(2, 2), 1e-14));
  const auto rho = random_density(4, {2}, {"X"});
  EXPECT_TRUE(apply_channel(v, rho, "X").matrix().isApprox(rho.matrix(), 1e-12));
}

TEST(Stinespring, IsometryAndKrausOracle) {
  for (int i = 0; i < 20; ++i) {
    const int d_in = 2 + i % 2, d_w = 2 + (i / 2) % 2, d_v = 1 + i % 4;
    if (d_w * d_v < d_in) continue;
    const auto v = StinespringIsometry::from_params(random_channel_params(i, d_in, d_w, d_v), d_in, d_w, d_v);
    EXPECT_LE(isometry_defect(v.matrix()), 1e-12);
    const auto rho = random_density(50 + i, {d_in}, {"X"});
    const auto out = apply_channel(v, rho, "X");
    EXPECT_LE((out.matrix() - kraus_sum(v.matrix(), rho.matrix(), d_w, d_v)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(Stinespring, SeedDeterminism) {
  EXPECT_EQ(random_channel_params(9, 2, 3, 6), random_channel_params(9, 2, 3, 6));
  EXPECT_NE(random_channel_params(9, 2, 3, 6), random_channel_params(10, 2, 3, 6));
}

TEST(Stinespring, DimensionMismatchThrows) {
  EXPECT_THROW(StinespringIsometry::from_params(RVector::Zero(3), 2, 2, 2), ValidationError);
  const auto v = identity_isometry(2, 2, 1);
  EXPECT_THROW(apply_channel(v, random_density(1, {3}, {"X"}), "X"), ValidationError);
  EXPECT_THROW(apply_channel(v, random_density(1, {2}, {"X"}), "Q"), ValidationError);
}

TEST(Flagged, EndpointsCarryFlag) {
  const auto rho = random_density(7, {2}, {"X"});
  const auto n0 = StinespringIsometry::from_params(random_channel_params(1, 2, 2, 4), 2, 2, 4);
  const auto n1 = StinespringIsometry::from_params(random_channel_params(2, 2, 2, 4), 2, 2, 4);
  const auto o1 = flagged_mix(n0, n1, 1.0).apply(rho, "X");
  const auto o0 = flagged_mix(n0, n1, 0.0).apply(rho, "X");
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1;
  const DensityOperator flag0(z, {2}, {"Wflag"});
  z(0, 0) = 0;
  z(1, 1) = 1;
  const DensityOperator flag1(z, {2}, {"Wflag"});
  EXPECT_TRUE(o1.matrix().isApprox(tensor_product(apply_channel(n0, rho, "X"), flag0).matrix(), 1e-12));
  EXPECT_TRUE(o0.matrix().isApprox(tensor_product(apply_channel(n1, rho, "X"), flag1).matrix(), 1e-12));
  EXPECT_THROW(flagged_mix(n0, n1, 1.5), ValidationError);
}

TEST(Flagged, MutualInformationDecomposes) {
  const auto psi = purify(rho3(0.4), "R").density();
  for (int i = 0; i < 10; ++i) {
    const auto n0 = StinespringIsometry::from_params(random_channel_params(10 + i, 2, 2, 4), 2, 2, 4);
    const auto n1 = StinespringIsometry::from_params(random_channel_params(30 + i, 2, 2, 4), 2, 2, 4);
    const double lam = 0.1 * (i + 0.5);
    const auto mixed = flagged_mix(n0, n1, lam).apply(psi, "X");
    const double expected = lam * mutual_information(apply_channel(n0, psi, "X"), {"Y", "R"}, {"W"}) +
                            (1 - lam) * mutual_information(apply_channel(n1, psi, "X"), {"Y", "R"}, {"W"});
    EXPECT_NEAR(mutual_information(mixed, {"Y", "R"}, {"W", "Wflag"}), expected, 1e-10);
  }
}

TEST(ClassicalChannel, IdentityDephasesAndConstantForgets) {
  const auto rho = rho3(0.4);
  RMatrix id = RMatrix::Identity(2, 2);
  const auto out = apply_channel(classical_to_quantum_channel(ConditionalChannel(id)), rho, "X");
  EXPECT_NEAR(std::abs(out.matrix()(0, 3)), 0.0, 1e-12);
  EXPECT_NEAR(out.matrix()(0, 0).real(), rho.matrix()(0, 0).real(), 1e-12);
  RMatrix cst = RMatrix::Constant(2, 2, 0.5);
  const auto flat = apply_channel(classical_to_quantum_channel(ConditionalChannel(cst)), rho, "X");
  EXPECT_NEAR(mutual_information(flat, {"Y"}, {"W"}), 0.0, 1e-12);
}

TEST(Parameterization, ExponentialAndLogRoundTrip) {
  const RVector theta = random_channel_params(4, 3, 3, 1) * 0.3;
  const CMatrix a = anti_hermitian_from_params(theta, 3);
  const CMatrix u = expm_anti_hermitian(a);
  EXPECT_TRUE((u.adjoint() * u).isApprox(CMatrix::Identity(3, 3), 1e-12));
  EXPECT_LE((unitary_log(u) - a).cwiseAbs().maxCoeff(), 1e-10);
}
