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

#include "bottleneck/quantum_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bottleneck/classical_ib.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/parallel.hpp"
#include "bottleneck/states.hpp"

namespace bottleneck {

IbObjective ib_objective(const RVector& theta, const PureState& psi_xyr, double beta, int d_w,
                         int d_v) {
  const int d_x = psi_xyr.systems().dim_of("X");
  const auto v = StinespringIsometry::from_params(theta, d_x, d_w, d_v);
  const PureState sigma = stinespring_extend(v, psi_xyr, "X");
  IbObjective out;
  out.i_yr_w = mutual_information(sigma, {"Y", "R"}, {"W"});
  out.i_y_w = mutual_information(sigma, {"Y"}, {"W"});
  out.lagrangian = out.i_yr_w - beta * out.i_y_w;
  return out;
}

namespace {

constexpr double kFeasibilitySlack = 1e-6;
constexpr double kNoBeta = std::numeric_limits<double>::quiet_NaN();
constexpr int kPenaltyStageIters = 80;
constexpr int kEscapeKicks = 3;

struct Shape {
  bool constraint_is_relevance;  // constraint on I(Y;W), objective I(YR;W)
  Sense sense;
  Bound bound;
};

Shape shape_of(QuantumProblem p) {
  switch (p) {
    case QuantumProblem::kIbPrimal: return {true, Sense::kMinimize, Bound::kAtLeast};
    case QuantumProblem::kIbDual: return {false, Sense::kMaximize, Bound::kAtMost};
    case QuantumProblem::kPfPrimal: return {false, Sense::kMinimize, Bound::kAtLeast};
    case QuantumProblem::kPfDual: return {true, Sense::kMaximize, Bound::kAtMost};
  }
  return {true, Sense::kMinimize, Bound::kAtLeast};
}

bool is_funnel(QuantumProblem p) {
  return p == QuantumProblem::kPfPrimal || p == QuantumProblem::kPfDual;
}

const char* kind_name(QuantumProblem p) {
  switch (p) {
    case QuantumProblem::kIbPrimal: return "quantum-ib";
    case QuantumProblem::kIbDual: return "quantum-ib-dual";
    case QuantumProblem::kPfPrimal: return "quantum-pf";
    case QuantumProblem::kPfDual: return "quantum-pf-dual";
  }
  return "quantum";
}

QuantumCandidate make_candidate(const TripartiteEvaluator& ev, CMatrix v, double beta,
                                bool converged) {
  const auto info = ev.evaluate(v);
  QuantumCandidate c;
  c.v = std::move(v);
  c.i_yr_w = info.i_yr_w;
  c.i_y_w = info.i_y_w;
  c.beta = beta;
  c.converged = converged;
  return c;
}

// Lagrangian of the sweep: I(YR;W) - beta I(Y;W) for the bottleneck,
// I(Y;W) - beta I(YR;W) for the funnel.
StiefelObjective lagrangian(const TripartiteEvaluator& ev, bool funnel, double beta) {
  return [&ev, funnel, beta](const CMatrix& v, CMatrix& g) {
    TripartiteGradient grad;
    const auto info = ev.evaluate(v, grad);
    if (funnel) {
      g = grad.i_y_w - beta * grad.i_yr_w;
      return info.i_y_w - beta * info.i_yr_w;
    }
    g = grad.i_yr_w - beta * grad.i_y_w;
    return info.i_yr_w - beta * info.i_y_w;
  };
}

double lagrangian_value(const QuantumCandidate& c, bool funnel, double beta) {
  return funnel ? c.i_y_w - beta * c.i_yr_w : c.i_yr_w - beta * c.i_y_w;
}

std::vector<CMatrix> anchors(const TripartiteEvaluator& ev) {
  const int dx = ev.source().d_x, dw = ev.d_w(), dv = ev.d_v();
  std::vector<CMatrix> out;
  auto attempt = [&](auto&& build) {
    try {
      out.push_back(build().matrix());
    } catch (const ValidationError&) {
      // dims cannot host this reference channel
    }
  };
  attempt([&] { return constant_isometry(dx, dw, dv); });
  attempt([&] { return identity_isometry(dx, dw, dv); });
  attempt([&] { return dephasing_isometry(CMatrix::Identity(dx, dx), dw, dv); });
  const CMatrix rho_x = ev.source().psi * ev.source().psi.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(rho_x));
  attempt([&] { return dephasing_isometry(es.eigenvectors(), dw, dv); });
  return out;
}

CMatrix random_isometry(std::uint64_t seed, int dx, int dw, int dv) {
  return StinespringIsometry::from_params(random_channel_params(seed, dx, dw, dv), dx, dw, dv)
      .matrix();
}

CMatrix perturbed(const CMatrix& v, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, scale);
  CMatrix y = v;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += Complex(n(rng), n(rng));
  return qr_retract(y);
}

void check_grid(const std::vector<double>& grid, double limit, const char* what) {
  if (grid.empty()) throw ValidationError("grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) throw ValidationError("grid entries must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("grid must be strictly increasing");
  }
  if (grid.back() > limit + 1e-12) {
    std::ostringstream os;
    os << what << ": level " << grid.back() << " exceeds " << limit;
    throw InfeasibleError(os.str());
  }
}

QuantumWitness witness_of(const QuantumCandidate& a, const QuantumCandidate& b, double weight,
                          bool mixed, int dx, int dw, int dv) {
  QuantumWitness w;
  w.d_in = dx;
  w.d_w = dw;
  w.d_v = dv;
  w.params0 = StinespringIsometry::from_matrix(a.v, dw, dv).params();
  if (mixed) {
    w.lambda = weight;
    w.params1 = StinespringIsometry::from_matrix(b.v, dw, dv).params();
  }
  return w;
}

}  // namespace

double constraint_limit(const TripartiteSource& src, QuantumProblem problem) {
  return shape_of(problem).constraint_is_relevance ? src.mutual_information_xy() : 2.0 * src.s_x;
}

std::vector<TradeoffPoint> tradeoff_points(const std::vector<QuantumCandidate>& cands,
                                           QuantumProblem problem) {
  const bool rel = shape_of(problem).constraint_is_relevance;
  std::vector<TradeoffPoint> pts;
  pts.reserve(cands.size());
  for (const auto& c : cands) {
    pts.push_back(rel ? TradeoffPoint{c.i_y_w, c.i_yr_w} : TradeoffPoint{c.i_yr_w, c.i_y_w});
  }
  return pts;
}

TradeoffEnvelope make_envelope(const std::vector<QuantumCandidate>& cands, QuantumProblem problem) {
  const auto s = shape_of(problem);
  return TradeoffEnvelope(tradeoff_points(cands, problem), s.sense, s.bound);
}

std::vector<QuantumCandidate> sweep_candidates(const TripartiteEvaluator& ev, QuantumProblem problem,
                                               const SolverConfig& cfg,
                                               const std::vector<QuantumCandidate>& warm) {
  cfg.validate();
  const bool funnel = is_funnel(problem);
  const int dx = ev.source().d_x, dw = ev.d_w(), dv = ev.d_v();
  std::vector<QuantumCandidate> cands;
  for (auto& v : anchors(ev)) cands.push_back(make_candidate(ev, std::move(v), kNoBeta, true));

  // For the bottleneck, beta <= 1 is won by the constant channel because
  // I(YR;W) >= I(Y;W).
  std::vector<double> betas;
  for (double b : cfg.betas()) {
    if (funnel || b > 1.0) betas.push_back(b);
  }
  std::sort(betas.begin(), betas.end());
  const std::uint64_t salt = funnel ? 0x5046ULL : 0x4942ULL;

  std::vector<std::vector<QuantumCandidate>> per_beta(betas.size());
  parallel_for(betas.size(), [&](std::size_t i) {
    const auto f = lagrangian(ev, funnel, betas[i]);
    for (int r = 0; r < cfg.restarts; ++r) {
      const auto seed = task_seed(cfg.seed ^ salt, i, static_cast<std::uint64_t>(r));
      auto res = stiefel_descent(f, random_isometry(seed, dx, dw, dv), cfg.max_iters, cfg.tol);
      per_beta[i].push_back(make_candidate(ev, std::move(res.v), betas[i], res.converged));
    }
  });
  // Continuation: each multiplier also starts from the previous best.
  const QuantumCandidate* carry = nullptr;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    if (carry) {
      auto res = stiefel_descent(lagrangian(ev, funnel, b), carry->v, cfg.max_iters, cfg.tol);
      per_beta[i].push_back(make_candidate(ev, std::move(res.v), b, res.converged));
    }
    carry = &*std::min_element(per_beta[i].begin(), per_beta[i].end(), [&](const auto& x,
                                                                            const auto& y) {
      return lagrangian_value(x, funnel, b) < lagrangian_value(y, funnel, b);
    });
  }
  for (auto& v : per_beta) {
    for (auto& c : v) cands.push_back(std::move(c));
  }

  // Warm starts keep their own point and are re-optimized at their multiplier.
  std::vector<QuantumCandidate> warmed(warm.size());
  parallel_for(warm.size(), [&](std::size_t i) {
    const auto& w = warm[i];
    if (std::isnan(w.beta)) return;
    auto res = stiefel_descent(lagrangian(ev, funnel, w.beta),
                               perturbed(w.v, task_seed(cfg.seed ^ 0x5741ULL, i, 0), 1e-3),
                               cfg.max_iters, cfg.tol);
    warmed[i] = make_candidate(ev, std::move(res.v), w.beta, res.converged);
  });
  for (std::size_t i = 0; i < warm.size(); ++i) {
    cands.push_back(warm[i]);
    if (warmed[i].v.size() > 0) cands.push_back(std::move(warmed[i]));
  }
  return cands;
}

std::vector<QuantumCandidate> refine_candidates(const TripartiteEvaluator& ev,
                                                QuantumProblem problem,
                                                const std::vector<double>& levels,
                                                const std::vector<QuantumCandidate>& base,
                                                const SolverConfig& cfg) {
  const auto s = shape_of(problem);
  const TradeoffEnvelope env = make_envelope(base, problem);
  std::vector<std::vector<QuantumCandidate>> found(levels.size());
  parallel_for(levels.size(), [&](std::size_t li) {
    const double level = levels[li];
    const auto ev_at = env.at(level, kFeasibilitySlack);
    if (!ev_at || ev_at->first == ev_at->second) return;
    for (std::size_t start : {ev_at->first, ev_at->second}) {
      CMatrix v = base[start].v;
      for (double weight = 1.0; weight <= 1.5e6; weight *= 2.0) {
        StiefelObjective f = [&, weight](const CMatrix& x, CMatrix& g) {
          TripartiteGradient grad;
          const auto info = ev.evaluate(x, grad);
          const double c = s.constraint_is_relevance ? info.i_y_w : info.i_yr_w;
          const double o = s.constraint_is_relevance ? info.i_yr_w : info.i_y_w;
          const CMatrix& gc = s.constraint_is_relevance ? grad.i_y_w : grad.i_yr_w;
          const CMatrix& go = s.constraint_is_relevance ? grad.i_yr_w : grad.i_y_w;
          const double sign = s.sense == Sense::kMinimize ? 1.0 : -1.0;
          const double gap =
              s.bound == Bound::kAtLeast ? std::max(0.0, level - c) : std::max(0.0, c - level);
          const double dgap = s.bound == Bound::kAtLeast ? -1.0 : 1.0;
          g = sign * go + (2.0 * weight * gap * dgap) * gc;
          return sign * o + weight * gap * gap;
        };
        auto res = stiefel_descent(f, std::move(v), kPenaltyStageIters, cfg.tol);
        if (weight * 2.0 > 1.5e6) {
          // Final weight: small kicks leave rank-deficient stationary points.
          for (int k = 0; k < kEscapeKicks; ++k) {
            const auto seed = task_seed(cfg.seed ^ 0x4b49ULL, li * 2 + (start == ev_at->first ? 0 : 1),
                                        static_cast<std::uint64_t>(k));
            auto kicked = stiefel_descent(f, perturbed(res.v, seed, 1e-2), kPenaltyStageIters, cfg.tol);
            if (kicked.value < res.value) res = std::move(kicked);
          }
        }
        v = res.v;
        found[li].push_back(make_candidate(ev, std::move(res.v), kNoBeta, res.converged));
      }
    }
  });
  std::vector<QuantumCandidate> out;
  for (auto& f : found) {
    for (auto& c : f) out.push_back(std::move(c));
  }
  return out;
}

QuantumSolution solve_quantum(const TripartiteSource& src, QuantumProblem problem,
                              const std::vector<double>& grid, const SolverConfig& cfg,
                              const std::vector<QuantumCandidate>& warm) {
  cfg.validate();
  check_grid(grid, constraint_limit(src, problem), kind_name(problem));
  QuantumSolution sol;
  sol.d_w = cfg.resolved_d_w(src.d_x);
  sol.d_v = cfg.resolved_d_v(src.d_x);
  const TripartiteEvaluator ev(src, sol.d_w, sol.d_v);
  sol.candidates = sweep_candidates(ev, problem, cfg, warm);
  auto refined = refine_candidates(ev, problem, grid, sol.candidates, cfg);
  for (auto& c : refined) sol.candidates.push_back(std::move(c));

  const TradeoffEnvelope env = make_envelope(sol.candidates, problem);
  Curve& curve = sol.curve;
  curve.kind = kind_name(problem);
  curve.config_hash = cfg.hash();
  {
    std::ostringstream os;
    os.precision(17);
    os << grid.size() << " points in [" << grid.front() << ", " << grid.back() << "]";
    curve.grid_spec = os.str();
  }
  curve.diagnostics.push_back("d_W=" + std::to_string(sol.d_w) + " d_V=" + std::to_string(sol.d_v));
  curve.diagnostics.push_back("candidates=" + std::to_string(sol.candidates.size()));
  for (double level : grid) {
    const auto at = env.at(level, kFeasibilitySlack);
    if (!at) {
      std::ostringstream os;
      os << kind_name(problem) << ": level " << level << " not reached (best " << env.reach()
         << ")";
      throw InfeasibleError(os.str());
    }
    CurvePoint pt;
    pt.abscissa = level;
    pt.value = at->value;
    pt.achieved_constraint = at->achieved;
    const auto& a = sol.candidates[at->first];
    const auto& b = sol.candidates[at->second];
    const bool mixed = at->first != at->second;
    pt.converged = a.converged && (!mixed || b.converged);
    pt.witness = witness_of(a, b, at->weight, mixed, src.d_x, sol.d_w, sol.d_v);
    curve.points.push_back(std::move(pt));
  }
  return sol;
}

Curve quantum_ib_curve(const DensityOperator& rho_xy, const SolverConfig& cfg,
                       const std::vector<double>& grid) {
  return solve_quantum(TripartiteSource::from_density(rho_xy), QuantumProblem::kIbPrimal, grid, cfg)
      .curve;
}

Curve quantum_pf_curve(const DensityOperator& rho_xy, const SolverConfig& cfg,
                       const std::vector<double>& grid) {
  return solve_quantum(TripartiteSource::from_density(rho_xy), QuantumProblem::kPfPrimal, grid, cfg)
      .curve;
}

Curve quantum_pf_dual_curve(const DensityOperator& rho_xy, const SolverConfig& cfg,
                            const std::vector<double>& grid) {
  return solve_quantum(TripartiteSource::from_density(rho_xy), QuantumProblem::kPfDual, grid, cfg)
      .curve;
}

Curve quantum_ib_curve_classical_w(const DensityOperator& rho_xy, const SolverConfig& cfg,
                                   const std::vector<double>& grid) {
  const JointDistribution p = diagonal_joint(rho_xy);
  // With a classical register W and classical X, I(YR;W) = I(X';W) = I(X;W).
  Curve c = classical_ib_curve(p, cfg.resolved_d_w(p.size_x()), grid, cfg);
  c.kind = "quantum-ib-classical-w";
  return c;
}

std::pair<double, double> replay_witness(const QuantumWitness& w, const DensityOperator& rho_xy) {
  const auto src = TripartiteSource::from_density(rho_xy);
  const DensityOperator psi = src.state().density();
  const auto v0 = StinespringIsometry::from_params(w.params0, w.d_in, w.d_w, w.d_v);
  const auto v1 = w.params1.size() > 0
                      ? StinespringIsometry::from_params(w.params1, w.d_in, w.d_w, w.d_v)
                      : v0;
  const DensityOperator out = flagged_mix(v0, v1, w.lambda).apply(psi, "X", "W", "Wflag");
  return {mutual_information(out, {"Y", "R"}, {"W", "Wflag"}),
          mutual_information(out, {"Y"}, {"W", "Wflag"})};
}

Curve normalize_curve(const Curve& curve, const DensityOperator& rho_xy, NormalizeMode mode) {
  if (rho_xy.systems().count() != 2) throw ValidationError("rho_XY must have exactly two factors");
  const auto& l = rho_xy.labels();
  const double i_xy = mutual_information(rho_xy, {l[0]}, {l[1]});
  const double two_h = 2.0 * entropy_of(rho_xy, {l[0]});
  if (i_xy <= 1e-12) throw ValidationError("normalization undefined: I(X;Y) = 0");
  auto ends_with = [&](const std::string& suffix) {
    return curve.kind.size() >= suffix.size() &&
           curve.kind.compare(curve.kind.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  double sx = 0.0, sy = 0.0;  // abscissa and value denominators
  bool funnel = false;
  if (ends_with("ib") || ends_with("ib-classical-w")) {
    sx = i_xy;
    sy = two_h;
  } else if (ends_with("ib-dual")) {
    sx = two_h;
    sy = i_xy;
  } else if (ends_with("pf-dual")) {
    sx = i_xy;
    sy = two_h;
    funnel = true;
  } else if (ends_with("pf")) {
    sx = two_h;
    sy = i_xy;
    funnel = true;
  } else {
    throw ValidationError("normalize_curve: unsupported curve kind " + curve.kind);
  }
  if (funnel != (mode == NormalizeMode::kFunnel)) {
    throw ValidationError("normalize_curve: mode does not match curve kind " + curve.kind);
  }
  Curve out = curve;
  out.kind += "-normalized";
  for (auto& p : out.points) {
    p.abscissa /= sx;
    p.value /= sy;
    p.achieved_constraint /= sx;
    if (p.reference) *p.reference /= sy;
  }
  return out;
}

EquivalenceReport equivalence_check(const StinespringIsometry& v, const DensityOperator& rho_xy) {
  if (rho_xy.systems().count() != 2) throw ValidationError("rho_XY must have exactly two factors");
  const DensityOperator rho = rho_xy.relabeled({"X", "Y"});
  const PureState tau = purify(partial_trace(rho, {"X"}), "X'");
  const DensityOperator tau_out = apply_channel(v, tau.density(), "X", "W");
  const PureState sigma = stinespring_extend(v, purify(rho, "R"), "X");
  EquivalenceReport r;
  r.lhs = mutual_information(tau_out, {"X'"}, {"W"});
  r.rhs = mutual_information(sigma, {"Y", "R"}, {"W"});
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

std::vector<Curve> dimension_study(const DensityOperator& rho_xy, const std::vector<int>& d_w_list,
                                   const SolverConfig& cfg, const std::vector<double>& grid) {
  for (std::size_t i = 0; i < d_w_list.size(); ++i) {
    if (d_w_list[i] < 1) throw ValidationError("d_W entries must be >= 1");
    if (i > 0 && d_w_list[i] <= d_w_list[i - 1]) throw ValidationError("d_W list must ascend");
  }
  const auto src = TripartiteSource::from_density(rho_xy);
  std::vector<Curve> curves;
  std::vector<QuantumCandidate> previous;
  int prev_w = 0, prev_v = 0;
  for (int dw : d_w_list) {
    SolverConfig c = cfg;
    c.d_w = dw;
    c.d_v = src.d_x * dw;
    std::vector<QuantumCandidate> warm;
    if (!previous.empty()) {
      const TradeoffEnvelope env = make_envelope(previous, QuantumProblem::kIbPrimal);
      for (std::size_t k : env.vertices()) {
        QuantumCandidate w = previous[k];
        w.v = embed_isometry(w.v, prev_w, prev_v, dw, c.d_v);
        warm.push_back(std::move(w));
      }
    }
    auto sol = solve_quantum(src, QuantumProblem::kIbPrimal, grid, c, warm);
    curves.push_back(std::move(sol.curve));
    previous = std::move(sol.candidates);
    prev_w = sol.d_w;
    prev_v = sol.d_v;
  }
  return curves;
}

}  // namespace bottleneck
