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

#include "bottleneck/rate_region.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bottleneck/error.hpp"
#include "bottleneck/quantum_solver.hpp"

namespace bottleneck {

void RegionBoundary::validate(double tolerance) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(p.q_x) || !std::isfinite(p.q_y) || p.q_x < 0.0 || p.q_y < -tolerance) {
      throw ValidationError("rate pair must be finite and non-negative");
    }
    if (i > 0) {
      if (!(p.q_x > points[i - 1].q_x)) throw ValidationError("Q_X must strictly increase");
      if (p.q_y > points[i - 1].q_y + tolerance) throw ValidationError("Q_Y must not increase");
    }
  }
}

std::uint64_t state_fingerprint(const PureState& psi) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < psi.dims().size(); ++i) os << psi.labels()[i] << ':' << psi.dims()[i] << ';';
  for (Eigen::Index i = 0; i < psi.vector().size(); ++i) {
    os << psi.vector()(i).real() << ',' << psi.vector()(i).imag() << ';';
  }
  return fnv1a(os.str());
}

namespace {

std::vector<double> doubled(const std::vector<double>& qx) {
  std::vector<double> out;
  for (double q : qx) out.push_back(2.0 * q);
  return out;
}

}  // namespace

RegionBoundary wak_boundary(const PureState& psi_xyr, const std::vector<double>& qx_grid,
                            const SolverConfig& cfg) {
  const auto src = TripartiteSource::from_pure(psi_xyr);
  for (double q : qx_grid) {
    if (!std::isfinite(q) || q < 0.0 || q > src.s_x + 1e-12) {
      throw ValidationError("Q_X grid must lie in [0, S(X)]");
    }
  }
  const auto sol = solve_quantum(src, QuantumProblem::kIbDual, doubled(qx_grid), cfg);
  RegionBoundary b;
  b.source_fingerprint = state_fingerprint(psi_xyr);
  b.config_hash = cfg.hash();
  for (std::size_t i = 0; i < qx_grid.size(); ++i) {
    const auto& pt = sol.curve.points[i];
    b.points.push_back({qx_grid[i], std::max(0.0, src.s_y - 0.5 * pt.value)});
    b.witnesses.push_back(pt.witness);
    b.converged.push_back(pt.converged);
  }
  b.validate(1e-9);
  return b;
}

double purity_complement_check(const StinespringIsometry& v, const PureState& psi_xyr) {
  const PureState sigma = stinespring_extend(v, psi_xyr, "X");
  const double lhs = 0.5 * mutual_information(sigma, {"Y"}, {"R", "V"});
  const double rhs = entropy_of(sigma, {"Y"}) - 0.5 * mutual_information(sigma, {"Y"}, {"W"});
  return std::abs(lhs - rhs);
}

PureState doubled_source(const PureState& psi_xyr) {
  const PureState ordered = permute_subsystems(psi_xyr, {"X", "Y", "R"});
  const PureState both = tensor_product(ordered, ordered, LabelPolicy::kSuffix);
  const PureState grouped = permute_subsystems(both, {"X1", "X2", "Y1", "Y2", "R1", "R2"});
  const auto& d = ordered.dims();
  return PureState(grouped.vector(), {d[0] * d[0], d[1] * d[1], d[2] * d[2]}, {"X", "Y", "R"});
}

CMatrix product_isometry(const CMatrix& v1, const CMatrix& v2, int d_w, int d_v) {
  const Eigen::Index dx1 = v1.cols(), dx2 = v2.cols();
  const Eigen::Index side = static_cast<Eigen::Index>(d_w) * d_v;
  if (v1.rows() != side || v2.rows() != side) throw ValidationError("product_isometry: shape mismatch");
  CMatrix out(side * side, dx1 * dx2);
  for (int w1 = 0; w1 < d_w; ++w1) {
    for (int w2 = 0; w2 < d_w; ++w2) {
      for (int e1 = 0; e1 < d_v; ++e1) {
        for (int e2 = 0; e2 < d_v; ++e2) {
          const Eigen::Index row = (static_cast<Eigen::Index>(w1) * d_w + w2) * d_v * d_v + e1 * d_v + e2;
          for (Eigen::Index x1 = 0; x1 < dx1; ++x1) {
            for (Eigen::Index x2 = 0; x2 < dx2; ++x2) {
              out(row, x1 * dx2 + x2) = v1(w1 * d_v + e1, x1) * v2(w2 * d_v + e2, x2);
            }
          }
        }
      }
    }
  }
  return out;
}

AdditivityReport additivity_check(const PureState& psi_xyr, const std::vector<double>& qx_probes,
                                  const SolverConfig& cfg) {
  cfg.validate();
  const auto src1 = TripartiteSource::from_pure(psi_xyr);
  const int dw = cfg.resolved_d_w(src1.d_x);
  const int dv = cfg.resolved_d_v(src1.d_x);
  const long side2 = static_cast<long>(dw) * dv * dw * dv;
  if (side2 > kMaxProductSide) {
    throw ScaleError("additivity_check: product isometry side " + std::to_string(side2) +
                     " exceeds " + std::to_string(kMaxProductSide));
  }
  const auto src2 = TripartiteSource::from_pure(doubled_source(psi_xyr));

  const auto single = solve_quantum(src1, QuantumProblem::kIbDual, doubled(qx_probes), cfg);
  const TradeoffEnvelope env1 = make_envelope(single.candidates, QuantumProblem::kIbDual);

  // Product witnesses from every pair of single-copy hull vertices.
  const TripartiteEvaluator ev2(src2, dw * dw, dv * dv);
  std::vector<QuantumCandidate> product;
  const auto& verts = env1.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i; j < verts.size(); ++j) {
      const auto& a = single.candidates[verts[i]];
      const auto& b = single.candidates[verts[j]];
      QuantumCandidate c;
      c.v = product_isometry(a.v, b.v, dw, dv);
      const auto info = ev2.evaluate(c.v);
      c.i_yr_w = info.i_yr_w;
      c.i_y_w = info.i_y_w;
      c.beta = std::numeric_limits<double>::quiet_NaN();
      c.converged = a.converged && b.converged;
      product.push_back(std::move(c));
    }
  }
  std::vector<double> levels2;
  for (double q : qx_probes) levels2.push_back(4.0 * q);
  auto refined = refine_candidates(ev2, QuantumProblem::kIbDual, levels2, product, cfg);
  for (auto& c : refined) product.push_back(std::move(c));
  const TradeoffEnvelope env2 = make_envelope(product, QuantumProblem::kIbDual);

  AdditivityReport report;
  report.pass = true;
  for (std::size_t i = 0; i < qx_probes.size(); ++i) {
    const auto one = env1.at(2.0 * qx_probes[i], 1e-6);
    const auto two = env2.at(4.0 * qx_probes[i], 1e-6);
    if (!one || !two) throw InfeasibleError("additivity_check: probe not reachable");
    AdditivityProbe p;
    p.q_x = qx_probes[i];
    p.single = std::max(0.0, src1.s_y - 0.5 * one->value);
    p.doubled_half = 0.5 * std::max(0.0, src2.s_y - 0.5 * two->value);
    p.difference = p.doubled_half - p.single;
    p.pass = p.difference <= 1e-6 && p.difference >= -2e-2;
    report.pass = report.pass && p.pass;
    report.probes.push_back(p);
  }
  return report;
}

}  // namespace bottleneck
