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
#include <string>

#include "bottleneck/classical_types.hpp"
#include "bottleneck/quantum_core.hpp"

namespace bottleneck {

/// Isometry X -> W (x) V realizing the channel rho -> tr_V(V rho V^dagger).
///
/// The matrix is the first d_in columns of exp(A(theta)), where A(theta) is
/// the (d_W d_V) x (d_W d_V) anti-Hermitian matrix with A_kk = i theta_k for
/// the first D entries and, for each pair j < k in row-major order, two
/// further entries (re, im) giving A_jk = re + i im. Output rows are indexed
/// w * d_V + v.
class StinespringIsometry {
 public:
  static StinespringIsometry from_params(RVector theta, int d_in, int d_w, int d_v);

  /// Completes `v` to a unitary, takes its principal logarithm and rebuilds
  /// the isometry from the resulting parameters. The rebuilt matrix matches
  /// `v` to round-off.
  static StinespringIsometry from_matrix(const CMatrix& v, int d_w, int d_v);

  const RVector& params() const { return params_; }
  const CMatrix& matrix() const { return matrix_; }
  int d_in() const { return d_in_; }
  int d_w() const { return d_w_; }
  int d_v() const { return d_v_; }

  /// Kraus operator (<i|_V (x) 1_W) V, shape d_W x d_in.
  CMatrix kraus(int i) const;

 private:
  StinespringIsometry(RVector params, CMatrix matrix, int d_in, int d_w, int d_v);

  RVector params_;
  CMatrix matrix_;
  int d_in_ = 0;
  int d_w_ = 0;
  int d_v_ = 0;
};

inline constexpr double kIsometryTolerance = 1e-10;

CMatrix anti_hermitian_from_params(const RVector& theta, int side);
RVector params_from_anti_hermitian(const CMatrix& a);
/// exp(A) for anti-Hermitian A through the eigendecomposition of iA.
CMatrix expm_anti_hermitian(const CMatrix& a);
/// Principal logarithm of a unitary, returned exactly anti-Hermitian.
CMatrix unitary_log(const CMatrix& u);
/// Unitary whose leading columns equal the orthonormal columns of `v`.
CMatrix complete_to_unitary(const CMatrix& v);
/// max |V^dagger V - 1|.
double isometry_defect(const CMatrix& v);

/// theta of length (d_W d_V)^2, entries uniform in [-pi, pi], fixed by `seed`.
RVector random_channel_params(std::uint64_t seed, int d_in, int d_w, int d_v);

/// Replaces factor `acted` of `psi` by the two factors (w_label, v_label).
PureState stinespring_extend(const StinespringIsometry& v, const PureState& psi,
                             const std::string& acted, const std::string& w_label = "W",
                             const std::string& v_label = "V");

/// Channel output with `acted` replaced in place by `w_label`.
DensityOperator apply_channel(const StinespringIsometry& v, const DensityOperator& rho,
                              const std::string& acted, const std::string& w_label = "W");

/// rho -> lambda N0(rho) (x) |0><0| + (1 - lambda) N1(rho) (x) |1><1|.
///
/// The flag factor is appended after all other factors. The weights are
/// (lambda, 1 - lambda); a display that writes lambda on both branches would
/// not be trace preserving and contradicts the block-diagonal output it is
/// meant to produce.
class FlaggedChannel {
 public:
  FlaggedChannel(StinespringIsometry n0, StinespringIsometry n1, double lambda);

  DensityOperator apply(const DensityOperator& rho, const std::string& acted,
                        const std::string& w_label = "W",
                        const std::string& flag_label = "Wflag") const;

  double lambda() const { return lambda_; }
  const StinespringIsometry& branch0() const { return n0_; }
  const StinespringIsometry& branch1() const { return n1_; }

 private:
  StinespringIsometry n0_;
  StinespringIsometry n1_;
  double lambda_;
};

FlaggedChannel flagged_mix(const StinespringIsometry& n0, const StinespringIsometry& n1,
                           double lambda);

/// Measure-and-prepare channel rho -> sum_{x,w} p(w|x) <x|rho|x> |w><w| as an
/// isometry V|x> = sum_w sqrt(p(w|x)) |w>_W |x, w>_V, so d_V = |X| |W|.
StinespringIsometry classical_to_quantum_channel(const ConditionalChannel& c);

// Reference channels embedded at the requested (d_W, d_V). Each throws
// ValidationError when the dimensions cannot host it.
StinespringIsometry constant_isometry(int d_in, int d_w, int d_v);    // W always |0>
StinespringIsometry identity_isometry(int d_in, int d_w, int d_v);    // |x>_W |0>_V
StinespringIsometry dephasing_isometry(const CMatrix& basis, int d_w, int d_v);  // |b_x>-> |x>_W|x>_V

/// Pads an isometry into larger W and V factors without changing the channel.
CMatrix embed_isometry(const CMatrix& v, int d_w, int d_v, int new_d_w, int new_d_v);

}  // namespace bottleneck
