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

#include <vector>

#include "bottleneck/classical_types.hpp"
#include "bottleneck/curve.hpp"

namespace bottleneck {

/// h(x) = -x log2 x - (1-x) log2 (1-x).
double binary_entropy(double x);
/// The preimage of y under h restricted to [0, 1/2], by bisection.
double binary_entropy_inverse(double y);
/// a * b = a (1 - b) + b (1 - a).
double binary_convolution(double a, double b);

/// F(a) = h(h^{-1}(a) * delta): the least H(Y|W) subject to H(X|W) >= a for a
/// uniform bit X sent through a binary symmetric channel with crossover delta.
double bsc_ib_oracle(double a, double delta);
/// I_Y(R) = H(Y) - F(H(X) - R) for the same source.
double bsc_relevant_information(double rate, double delta);
/// R(I_Y), the inverse of bsc_relevant_information on [0, 1 - h(delta)].
double bsc_ib_rate(double relevant, double delta);

/// Uniform X through a BSC(delta).
JointDistribution bsc_joint(double delta);

/// One achieved channel with its information pair.
struct ClassicalCandidate {
  RMatrix channel;  // |X| x |W| over the reduced alphabet
  ChannelInformation info;
  double beta = 0.0;
  bool converged = true;
};

struct FixedPointResult {
  RMatrix channel;
  ChannelInformation info;
  int iterations = 0;
  bool converged = false;
};

/// Self-consistent IB updates for min I(X;W) - beta I(Y;W):
/// p(w|x) <- p(w) exp(-beta KL(p(y|x) || p(y|w))) / Z(x).
FixedPointResult ib_fixed_point(const JointDistribution& p, double beta, RMatrix init,
                                int max_iters, double tol);

/// R(I_Y) = min I(X;W) s.t. I(Y;W) >= I_Y on the grid of relevance targets.
Curve classical_ib_curve(const JointDistribution& p, int d_w, const std::vector<double>& grid,
                         const SolverConfig& cfg);
/// I_Y(R) = max I(Y;W) s.t. I(X;W) <= R on a grid of rates, from a separate
/// sweep over the reciprocal multipliers.
Curve classical_ib_dual_curve(const JointDistribution& p, int d_w,
                              const std::vector<double>& grid, const SolverConfig& cfg);

/// G(t) = min I(Y;W) s.t. I(X;W) >= t. Each point carries the bound
/// max{0, t - H(X|Y)} as its reference.
Curve classical_pf_curve(const JointDistribution& p, int d_w, const std::vector<double>& grid,
                         const SolverConfig& cfg);
/// P(a) = max I(X;W) s.t. I(Y;W) <= a.
Curve classical_pf_dual_curve(const JointDistribution& p, int d_w,
                              const std::vector<double>& grid, const SolverConfig& cfg);

/// Every achieved privacy-funnel candidate; exposed for multi-letter probes.
std::vector<ClassicalCandidate> privacy_funnel_candidates(const JointDistribution& p, int d_w,
                                                          const std::vector<double>& targets,
                                                          const SolverConfig& cfg);

struct MultiLetterPoint {
  double single_letter = 0.0;  // G(t)
  double multi_letter = 0.0;   // (1/n) G^{(n)}(n t)
};

/// (1/n) G^{(n)}(n t) on p^{(x) n} with n <= 2 and |X|^n <= 8. The candidate
/// set includes every product of two single-letter witnesses, so the result
/// never exceeds the single-letter value.
MultiLetterPoint multi_letter_pf_point(const JointDistribution& p, int n, double t, int d_w,
                                       const SolverConfig& cfg);

/// Deterministic maps of m symbols onto at most `blocks` labels, one per set
/// partition (restricted growth strings), as m x blocks 0/1 matrices.
std::vector<RMatrix> partition_channels(int m, int blocks);

}  // namespace bottleneck
