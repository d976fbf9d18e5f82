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

#include "bottleneck/curve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bottleneck/error.hpp"

namespace bottleneck {

void SolverConfig::validate() const {
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
  if (d_w < 0 || d_v < 0) throw ValidationError("d_W and d_V must be >= 1 (0 selects default)");
  if (max_iters < 1 || classical_max_iters < 1) throw ValidationError("iteration caps must be >= 1");
  if (!(grad_step > 0.0)) throw ValidationError("grad_step must be > 0");
  for (double b : beta_grid) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("beta grid entries must be positive");
  }
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SolverConfig::hash() const {
  std::ostringstream os;
  os.precision(17);
  os << restarts << '|' << seed << '|' << max_iters << '|' << classical_max_iters << '|'
     << grad_step << '|' << tol << '|' << d_w << '|' << d_v;
  for (double b : betas()) os << '|' << b;
  return fnv1a(os.str());
}

std::vector<double> SolverConfig::betas() const {
  return beta_grid.empty() ? default_beta_grid() : beta_grid;
}

std::vector<double> default_beta_grid() {
  std::vector<double> out;
  constexpr int kCount = 60;
  for (int i = 0; i < kCount; ++i) {
    out.push_back(std::pow(10.0, -3.0 + 6.0 * i / (kCount - 1)));
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return out;
}

void Curve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].value) || !std::isfinite(points[i].abscissa)) {
      throw ValidationError("curve: non-finite point");
    }
    if (i > 0 && !(points[i].abscissa > points[i - 1].abscissa)) {
      throw ValidationError("curve: abscissae not strictly increasing");
    }
  }
}

std::vector<double> Curve::abscissae() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.abscissa);
  return out;
}

std::vector<double> Curve::values() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

ConvexityReport convexity_check(std::span<const double> x, std::span<const double> y,
                                double tolerance) {
  if (x.size() != y.size()) throw ValidationError("convexity_check: size mismatch");
  if (x.size() < 3) throw ValidationError("convexity_check needs at least 3 points");
  ConvexityReport r;
  r.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    const double d = ((y[i + 1] - y[i]) / h2 - (y[i] - y[i - 1]) / h1) * 0.5 * (h1 + h2);
    if (d < r.min_second_difference) {
      r.min_second_difference = d;
      r.location = i;
    }
  }
  r.pass = r.min_second_difference >= -tolerance;
  return r;
}

ConvexityReport convexity_check(const Curve& curve, double tolerance) {
  const auto x = curve.abscissae();
  const auto y = curve.values();
  return convexity_check(x, y, tolerance);
}

}  // namespace bottleneck
