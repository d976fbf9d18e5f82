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

#include "bottleneck/channels.hpp"
#include "bottleneck/curve.hpp"
#include "bottleneck/envelope.hpp"
#include "bottleneck/quantum_core.hpp"
#include "bottleneck/tripartite.hpp"

namespace bottleneck {

struct IbObjective {
  double lagrangian = 0.0;  // I(YR;W) - beta I(Y;W)
  double i_y_w = 0.0;
  double i_yr_w = 0.0;
};

/// Reference evaluation through stinespring_extend and full partial traces.
/// `psi_xyr` carries factors named X, Y and R.
IbObjective ib_objective(const RVector& theta, const PureState& psi_xyr, double beta, int d_w,
                         int d_v);

/// The four constrained problems over channels X -> W.
enum class QuantumProblem {
  kIbPrimal,  // min I(YR;W) s.t. I(Y;W) >= a
  kIbDual,    // max I(Y;W)  s.t. I(YR;W) <= R
  kPfPrimal,  // min I(Y;W)  s.t. I(YR;W) >= t
  kPfDual,    // max I(YR;W) s.t. I(Y;W) <= a
};

struct QuantumCandidate {
  CMatrix v;  // isometry, rows w * d_V + v
  double i_yr_w = 0.0;
  double i_y_w = 0.0;
  double beta = 0.0;  // NaN when not produced by a Lagrangian run
  bool converged = true;
};

/// Largest admissible constraint level of `problem` for the source.
double constraint_limit(const TripartiteSource& src, QuantumProblem problem);
std::vector<TradeoffPoint> tradeoff_points(const std::vector<QuantumCandidate>& cands,
                                           QuantumProblem problem);
TradeoffEnvelope make_envelope(const std::vector<QuantumCandidate>& cands, QuantumProblem problem);

/// Reference channels, multi-restart Lagrangian sweep with continuation, and
/// descent runs warm-started from `warm` (already at the evaluator's dims).
std::vector<QuantumCandidate> sweep_candidates(const TripartiteEvaluator& ev, QuantumProblem problem,
                                               const SolverConfig& cfg,
                                               const std::vector<QuantumCandidate>& warm = {});

/// Quadratic-penalty runs at each level, weight doubling from 1 to 1e6,
/// started from the hull vertices bracketing the level.
std::vector<QuantumCandidate> refine_candidates(const TripartiteEvaluator& ev,
                                                QuantumProblem problem,
                                                const std::vector<double>& levels,
                                                const std::vector<QuantumCandidate>& base,
                                                const SolverConfig& cfg);

struct QuantumSolution {
  Curve curve;
  std::vector<QuantumCandidate> candidates;
  int d_w = 0;
  int d_v = 0;
};

QuantumSolution solve_quantum(const TripartiteSource& src, QuantumProblem problem,
                              const std::vector<double>& grid, const SolverConfig& cfg,
                              const std::vector<QuantumCandidate>& warm = {});

/// R_q(a) on grid a in [0, I(X;Y)], rho_XY with factors (X, Y) in that order.
Curve quantum_ib_curve(const DensityOperator& rho_xy, const SolverConfig& cfg,
                       const std::vector<double>& grid);
/// G_q(t) on grid t in [0, 2 S(X)].
Curve quantum_pf_curve(const DensityOperator& rho_xy, const SolverConfig& cfg,
                       const std::vector<double>& grid);
/// P_q(a) = max I(YR;W) s.t. I(Y;W) <= a on grid a in [0, I(X;Y)].
Curve quantum_pf_dual_curve(const DensityOperator& rho_xy, const SolverConfig& cfg,
                            const std::vector<double>& grid);

/// IB curve with W restricted to a classical register, for a diagonal rho_XY.
/// Witnesses are conditional channels; values are I(YR;W) of the induced
/// measure-and-prepare channel.
Curve quantum_ib_curve_classical_w(const DensityOperator& rho_xy, const SolverConfig& cfg,
                                   const std::vector<double>& grid);

/// Replays a quantum witness through the flagged channel on the purified
/// source: returns (I(YR;W Wflag), I(Y;W Wflag)).
std::pair<double, double> replay_witness(const QuantumWitness& w, const DensityOperator& rho_xy);

enum class NormalizeMode { kBottleneck, kFunnel };

/// Divides I(Y;W)-type coordinates by I(X;Y) and I(YR;W)-type coordinates by
/// 2 S(X). Bottleneck mode accepts IB curves, funnel mode PF curves.
Curve normalize_curve(const Curve& curve, const DensityOperator& rho_xy, NormalizeMode mode);

struct EquivalenceReport {
  double lhs = 0.0;  // I(X';W) on (id (x) N) tau_X'X
  double rhs = 0.0;  // I(YR;W) on sigma_WVYR
  double gap = 0.0;
};

EquivalenceReport equivalence_check(const StinespringIsometry& v, const DensityOperator& rho_xy);

/// One IB curve per d_W (ascending); each run includes the previous hull
/// witnesses embedded into the larger dimensions, so curves never increase.
std::vector<Curve> dimension_study(const DensityOperator& rho_xy, const std::vector<int>& d_w_list,
                                   const SolverConfig& cfg, const std::vector<double>& grid);

}  // namespace bottleneck
