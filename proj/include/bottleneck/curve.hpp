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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bottleneck/classical_types.hpp"

namespace bottleneck {

/// Shared settings for the classical and quantum curve solvers.
struct SolverConfig {
  int restarts = 20;
  std::uint64_t seed = 0;
  int max_iters = 300;            // per quantum descent run
  int classical_max_iters = 5000; // per self-consistent IB run
  double grad_step = 1e-5;        // finite-difference step for gradient validation
  double tol = 1e-9;              // relative-change stopping threshold
  int d_w = 0;                    // 0 selects d_X + 1
  int d_v = 0;                    // 0 selects d_X * d_W
  std::vector<double> beta_grid;  // empty selects default_beta_grid()

  void validate() const;
  /// Stable 64-bit fingerprint of every field.
  std::uint64_t hash() const;
  std::vector<double> betas() const;
  int resolved_d_w(int d_x) const { return d_w > 0 ? d_w : d_x + 1; }
  int resolved_d_v(int d_x) const { return d_v > 0 ? d_v : d_x * resolved_d_w(d_x); }
};

/// 60 log-spaced multipliers in [1e-3, 1e3].
std::vector<double> default_beta_grid();

/// Witness of a quantum curve point: the flagged mixture of two isometries
/// with weight `lambda` on the first. A single isometry has lambda == 1 and
/// empty params1.
struct QuantumWitness {
  double lambda = 1.0;
  RVector params0;
  RVector params1;
  int d_in = 0;
  int d_w = 0;
  int d_v = 0;
};

using Witness = std::variant<std::monostate, ConditionalChannel, QuantumWitness>;

struct CurvePoint {
  double abscissa = 0.0;
  double value = 0.0;
  double achieved_constraint = 0.0;
  bool converged = false;
  Witness witness;
  /// Optional comparison column: analytic oracle or known bound at this abscissa.
  std::optional<double> reference;
};

struct Curve {
  std::string kind;  // e.g. "classical-ib", "quantum-pf-dual"
  std::vector<CurvePoint> points;
  std::string grid_spec;
  std::uint64_t config_hash = 0;
  std::vector<std::string> diagnostics;

  /// Abscissae strictly increasing, values finite; throws ValidationError.
  void validate() const;
  std::vector<double> abscissae() const;
  std::vector<double> values() const;
};

struct ConvexityReport {
  double min_second_difference = 0.0;
  std::size_t location = 0;  // index of the middle point
  bool pass = false;
};

/// Second differences scaled to the plain v[i-1] - 2 v[i] + v[i+1] on a
/// uniform grid. Needs at least three points.
ConvexityReport convexity_check(std::span<const double> x, std::span<const double> y,
                                double tolerance);
ConvexityReport convexity_check(const Curve& curve, double tolerance = 1e-6);

/// n evenly spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

/// FNV-1a over bytes.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace bottleneck
