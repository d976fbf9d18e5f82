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

#include <cstdint>
#include <vector>

#include "bottleneck/channels.hpp"
#include "bottleneck/curve.hpp"
#include "bottleneck/quantum_core.hpp"

namespace bottleneck {

struct RatePair {
  double q_x = 0.0;
  double q_y = 0.0;
};

/// Lower-left boundary of the achievable (Q_X, Q_Y) set, one point per Q_X.
struct RegionBoundary {
  std::vector<RatePair> points;
  std::vector<Witness> witnesses;
  std::vector<bool> converged;
  std::uint64_t source_fingerprint = 0;
  std::uint64_t config_hash = 0;

  /// Q_X strictly increasing, Q_Y finite, non-negative and non-increasing
  /// within `tolerance`.
  void validate(double tolerance = 1e-9) const;
};

/// Q_Y(Q_X) = H(Y) - I_Y(2 Q_X) / 2 with I_Y(R) the largest I(Y;W) over
/// channels X -> W with I(YR;W) <= R. `psi_xyr` carries factors X, Y, R.
RegionBoundary wak_boundary(const PureState& psi_xyr, const std::vector<double>& qx_grid,
                            const SolverConfig& cfg);

/// |I(Y;RV)/2 - (H(Y) - I(Y;W)/2)| on sigma_WVYR.
double purity_complement_check(const StinespringIsometry& v, const PureState& psi_xyr);

std::uint64_t state_fingerprint(const PureState& psi);

/// psi (x) psi with factors X = X1 X2, Y = Y1 Y2, R = R1 R2.
PureState doubled_source(const PureState& psi_xyr);

/// Product isometry V1 (x) V2 with rows ordered (w1, w2, v1, v2).
CMatrix product_isometry(const CMatrix& v1, const CMatrix& v2, int d_w, int d_v);

struct AdditivityProbe {
  double q_x = 0.0;
  double single = 0.0;       // Q_Y of psi at Q_X
  double doubled_half = 0.0; // Q_Y of psi (x) psi at 2 Q_X, halved
  double difference = 0.0;   // doubled_half - single
  bool pass = false;         // difference in [-2e-2, 1e-6]
};

struct AdditivityReport {
  std::vector<AdditivityProbe> probes;
  bool pass = false;
};

inline constexpr int kMaxProductSide = 1024;

/// Compares the boundary of psi (x) psi at 2 Q_X with twice the boundary of
/// psi at Q_X. Product witnesses and their Minkowski sums seed the doubled
/// problem, which is then refined by penalty descent.
AdditivityReport additivity_check(const PureState& psi_xyr, const std::vector<double>& qx_probes,
                                  const SolverConfig& cfg);

}  // namespace bottleneck
