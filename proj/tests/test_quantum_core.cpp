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

#include "bottleneck/classical_ib.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/quantum_core.hpp"
#include "bottleneck/states.hpp"

using namespace bottleneck;

namespace {

CVector ket(std::initializer_list<Complex> v) {
  CVector k(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) k(i++) = c;
  return k;
}

double h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

}  // namespace

TEST(Entropy, MaximallyMixedQubitIsOneBit) {
  DensityOperator rho(CMatrix::Identity(2, 2) * 0.5, {2}, {"A"});
  EXPECT_NEAR(von_neumann_entropy(rho).value, 1.0, 1e-12);
}

TEST(Entropy, PureStateIsZero) {
  const CVector v = ket({0.6, Complex(0, 0.8)});
  DensityOperator rho(v * v.adjoint(), {2}, {"A"});
  EXPECT_NEAR(von_neumann_entropy(rho).value, 0.0, 1e-12);
}

TEST(Entropy, Rho3MarginalIsBinaryEntropyOfPointTwo) {
  const auto rho = rho3(0.4);
  const auto x = partial_trace(rho, {"X"});
  EXPECT_NEAR(x.matrix()(0, 0).real(), 0.2, 1e-12);
  EXPECT_NEAR(x.matrix()(1, 1).real(), 0.8, 1e-12);
  EXPECT_NEAR(std::abs(x.matrix()(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(entropy_of(rho, {"X"}), 0.7219280948873623, 1e-12);
}

TEST(Entropy, Rho3MutualInformationFromBlockSpectrum) {
  // Nonzero block in span{|00>, |11>}: [[p/2, p/2], [p/2, 1 - p/2]].
  for (double p : {0.2, 0.4, 0.7}) {
    const double disc = std::sqrt(1.0 - 2.0 * p * (1.0 - p));
    const double lam = 0.5 * (1.0 - disc);
    const double expected = 2.0 * h2(p / 2) - h2(lam);
    EXPECT_NEAR(mutual_information(rho3(p), {"X"}, {"Y"}), expected, 1e-12) << p;
  }
  EXPECT_NEAR(mutual_information(rho3(0.4), {"X"}, {"Y"}), 0.861, 1e-3);
}

TEST(Entropy, RejectsInvalidMatrix) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator(m, {2}, {"A"}), ValidationError);
  EXPECT_THROW(DensityOperator(CMatrix::Identity(2, 2), {2}, {"A"}), ValidationError);
  EXPECT_THROW(DensityOperator(CMatrix::Identity(2, 2) * 0.5, {3}, {"A"}), ValidationError);
}

TEST(PartialTrace, BellStateHalfIsMaximallyMixed) {
  const double s = 1 / std::sqrt(2.0);
  PureState bell(ket({s, 0, 0, s}), {2, 2}, {"A", "B"});
  const auto a = partial_trace(bell, {"A"});
  EXPECT_TRUE(a.matrix().isApprox(CMatrix::Identity(2, 2) * 0.5, 1e-12));
  EXPECT_THROW(partial_trace(bell, {"C"}), ValidationError);
}

TEST(PartialTrace, ProductStateFactor) {
  const auto r = random_density(1, {2}, {"A"});
  const auto s = random_density(2, {3}, {"B"});
  const auto back = partial_trace(tensor_product(r, s), {"A"});
  EXPECT_LE((back.matrix() - r.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(mutual_information(tensor_product(r, s), {"A"}, {"B"}), 0.0, 1e-9);
}

TEST(TensorProduct, LabelPolicies) {
  const auto r = random_density(3, {2}, {"A"});
  EXPECT_THROW(tensor_product(r, r), ValidationError);
  const auto rr = tensor_product(r, r, LabelPolicy::kSuffix);
  EXPECT_EQ(rr.labels(), (std::vector<std::string>{"A1", "A2"}));
  DensityOperator one(CMatrix::Identity(1, 1), {1}, {"T"});
  EXPECT_TRUE(partial_trace(tensor_product(r, one), {"A"}).matrix().isApprox(r.matrix(), 1e-14));
}

TEST(Purify, MaximallyMixedGivesMaximallyEntangled) {
  DensityOperator rho(CMatrix::Identity(2, 2) * 0.5, {2}, {"A"});
  const auto psi = purify(rho, "R");
  EXPECT_NEAR(entropy_of(psi, {"R"}), 1.0, 1e-12);
  EXPECT_NEAR(mutual_information(psi, {"A"}, {"R"}), 2.0, 1e-12);
}

TEST(Purify, RoundTripOnRandomStates) {
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(100 + i, {2, 3}, {"X", "Y"});
    const auto back = partial_trace(purify(rho, "R"), {"X", "Y"});
    EXPECT_LE((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Information, GhzConditionalMutualInformation) {
  const double s = 1 / std::sqrt(2.0);
  CVector v = CVector::Zero(8);
  v(0) = s;
  v(7) = s;
  PureState ghz(v, {2, 2, 2}, {"A", "B", "C"});
  const auto rho = ghz.density();
  EXPECT_NEAR(partial_trace(rho, {"A", "B"}).matrix()(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(mutual_information(partial_trace(rho, {"A", "B"}), {"A"}, {"B"}), 1.0, 1e-12);
  // Pure GHZ: I(A;B|C) = S(AC) + S(BC) - S(ABC) - S(C) = 1.
  EXPECT_NEAR(conditional_mutual_information(rho, {"A"}, {"B"}, {"C"}), 1.0, 1e-12);
  // Dephased GHZ: conditioning on C removes all correlation.
  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 0) = 0.5;
  m(7, 7) = 0.5;
  const DensityOperator mixed(m, {2, 2, 2}, {"A", "B", "C"});
  EXPECT_NEAR(conditional_mutual_information(mixed, {"A"}, {"B"}, {"C"}), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(mixed, {"A"}, {"B"}), 1.0, 1e-12);
  EXPECT_THROW(mutual_information(rho, {"A"}, {"A", "B"}), ValidationError);
}

TEST(Information, PureTripartiteDecomposition) {
  for (int i = 0; i < 20; ++i) {
    const auto psi = random_pure(200 + i, {2, 3, 2}, {"A", "B", "E"});
    const double lhs = entropy_of(psi, {"A"});
    const double rhs = 0.5 * (mutual_information(psi, {"A"}, {"B"}) + mutual_information(psi, {"A"}, {"E"}));
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

TEST(Classical, EmbeddingMatchesShannon) {
  const auto p = random_joint(5, 3, 2);
  const auto rho = embed_classical_joint(p);
  EXPECT_NEAR(entropy_of(rho, {"X"}), p.entropy_x(), 1e-12);
  EXPECT_NEAR(mutual_information(rho, {"X"}, {"Y"}), p.mutual_information(), 1e-12);
}

TEST(Classical, StandardMutualInformations) {
  RMatrix uniform = RMatrix::Constant(2, 2, 0.25);
  EXPECT_NEAR(JointDistribution(uniform).mutual_information(), 0.0, 1e-14);
  EXPECT_NEAR(correlated_bits().mutual_information(), 1.0, 1e-14);
  EXPECT_NEAR(bsc_joint(0.1).mutual_information(), 1.0 - h2(0.1), 1e-12);
  EXPECT_NEAR(bsc_joint(0.1).mutual_information(), 0.5310044064107187, 1e-12);
  RMatrix bad = RMatrix::Constant(2, 2, 0.3);
  EXPECT_THROW(JointDistribution{bad}, ValidationError);
}
