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

// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion]   (no argument runs all ten)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bottleneck/channels.hpp"
#include "bottleneck/classical_ib.hpp"
#include "bottleneck/parallel.hpp"
#include "bottleneck/quantum_solver.hpp"
#include "bottleneck/rate_region.hpp"
#include "bottleneck/states.hpp"

using namespace bottleneck;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Detail {
  std::ostringstream os;
  template <typename T>
  Detail& operator()(const char* k, const T& v) {
    if (os.tellp() > 0) os << ", ";
    os << k << '=' << v;
    return *this;
  }
  std::string str() const { return os.str(); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double sup_gap(const Curve& a, const Curve& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) s = std::max(s, std::abs(a.points[i].value - b.points[i].value));
  return s;
}

SolverConfig default_config(std::uint64_t seed = 0) {
  SolverConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// BSC oracle match.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Detail d;
  bool ok = true;
  for (double delta : {0.1, 0.9}) {
    const auto p = bsc_joint(delta);
    const auto c = classical_ib_curve(p, 4, linear_grid(0.0, p.mutual_information(), 21), default_config());
    double sup = 0.0;
    for (const auto& pt : c.points) {
      // I_Y(a) = H(Y) - F(H(X) - a) with F(a) = h(h^-1(a) * delta), evaluated as a function of rate.
      const double relevant = 1.0 - binary_entropy(binary_convolution(binary_entropy_inverse(1.0 - pt.value), delta));
      sup = std::max(sup, std::abs(relevant - pt.abscissa));
      sup = std::max(sup, std::abs(pt.value - bsc_ib_rate(pt.abscissa, delta)));
    }
    ok = ok && sup <= 2e-3;
    d(delta == 0.1 ? "sup(0.1)" : "sup(0.9)", sup);
  }
  const double t = seconds_since(t0);
  d("seconds", t);
  return {ok && t < 10.0, d.str()};
}

// Quantum solver on the embedded BSC matches the normalized classical curve.
Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rho = bsc_state(0.9);
  const auto p = bsc_joint(0.9);
  const auto grid = linear_grid(0.0, p.mutual_information(), 21);
  SolverConfig cfg = default_config();
  cfg.d_w = 3;
  const auto q = normalize_curve(quantum_ib_curve(rho, cfg, grid), rho, NormalizeMode::kBottleneck);
  const auto c = normalize_curve(classical_ib_curve(p, 4, grid, cfg), rho, NormalizeMode::kBottleneck);
  const double sup = sup_gap(q, c);
  const double t = seconds_since(t0);
  return {sup <= 1e-2 && t < 300.0, (Detail{}("sup", sup)("seconds", t)).str()};
}

// Pure-state identity for IB and PF.
Outcome criterion3() {
  const auto rho = random_pure_two_qubit(2024);
  const double i_xy = mutual_information(rho, {"X"}, {"Y"});
  const auto grid = linear_grid(0.0, i_xy, 11);
  const auto ib = normalize_curve(quantum_ib_curve(rho, default_config(), grid), rho, NormalizeMode::kBottleneck);
  const auto pf = normalize_curve(quantum_pf_dual_curve(rho, default_config(), grid), rho, NormalizeMode::kFunnel);
  double s_ib = 0.0, s_pf = 0.0;
  for (const auto& pt : ib.points) s_ib = std::max(s_ib, std::abs(pt.value - pt.abscissa));
  for (const auto& pt : pf.points) s_pf = std::max(s_pf, std::abs(pt.value - pt.abscissa));
  return {s_ib <= 5e-3 && s_pf <= 5e-3, (Detail{}("I(X;Y)", i_xy)("sup_ib", s_ib)("sup_pf", s_pf)).str()};
}

// Dimension study for rho3.
Outcome criterion4() {
  Detail d;
  bool ok = true;
  for (double p : {0.2, 0.4}) {
    const auto rho = rho3(p);
    const auto grid = linear_grid(0.0, mutual_information(rho, {"X"}, {"Y"}), 21);
    auto curves = dimension_study(rho, {2, 3, 4}, default_config(), grid);
    for (auto& c : curves) c = normalize_curve(c, rho, NormalizeMode::kBottleneck);
    double best_drop = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      best_drop = std::max(best_drop, curves[0].points[i].value - curves[1].points[i].value);
    }
    const double gap43 = sup_gap(curves[2], curves[1]);
    ok = ok && best_drop >= 0.01 && gap43 <= 1e-2;
    const std::string tag = p == 0.2 ? "(0.2)" : "(0.4)";
    d(("max_drop_2to3" + tag).c_str(), best_drop)(("sup_gap_3to4" + tag).c_str(), gap43);
  }
  return {ok, d.str()};
}

// Classical-state endpoint and classical-W restriction.
Outcome criterion5() {
  double worst_end = 0.0, worst_cw = -1.0;
  for (int i = 0; i < 5; ++i) {
    const auto joint = random_joint(task_seed(55, 0, i), 2 + i % 2, 2 + (i / 2) % 2);
    const auto rho = embed_classical_joint(joint);
    const auto grid = linear_grid(0.0, joint.mutual_information(), 6);
    SolverConfig cfg = default_config(i);
    const auto q = normalize_curve(quantum_ib_curve(rho, cfg, grid), rho, NormalizeMode::kBottleneck);
    worst_end = std::max(worst_end, std::abs(q.points.back().value - 0.5));
    const auto cw = normalize_curve(quantum_ib_curve_classical_w(rho, cfg, grid), rho, NormalizeMode::kBottleneck);
    for (const auto& pt : cw.points) worst_cw = std::max(worst_cw, pt.value - 0.5);
  }
  return {worst_end <= 1e-2 && worst_cw <= 1e-6,
          (Detail{}("endpoint_gap", worst_end)("classical_w_excess", worst_cw)).str()};
}

// Convexity of quantum IB envelopes and flagged decomposition.
Outcome criterion6() {
  double worst_conv = 0.0;
  std::vector<DensityOperator> states{rho3(0.2), rho3(0.4), bsc_state(0.9), random_pure_two_qubit(3)};
  for (int i = 0; i < 3; ++i) states.push_back(random_density(task_seed(66, 0, i), {2, 2}, {"X", "Y"}));
  for (const auto& rho : states) {
    const auto c = quantum_ib_curve(rho, default_config(), linear_grid(0.0, mutual_information(rho, {"X"}, {"Y"}), 11));
    worst_conv = std::min(worst_conv, convexity_check(c, 1e-3).min_second_difference);
  }
  const auto rho = rho3(0.4);
  const auto psi = purify(rho, "R").density();
  double worst_flag = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto v0 = StinespringIsometry::from_params(random_channel_params(task_seed(67, 0, i), 2, 3, 4), 2, 3, 4);
    const auto v1 = StinespringIsometry::from_params(random_channel_params(task_seed(67, 1, i), 2, 3, 4), 2, 3, 4);
    const double lambda = (i + 0.5) / 50.0;
    const auto mixed = flagged_mix(v0, v1, lambda).apply(psi, "X");
    const auto o0 = apply_channel(v0, psi, "X");
    const auto o1 = apply_channel(v1, psi, "X");
    for (const Names& a : {Names{"Y"}, Names{"Y", "R"}, Names{"R"}}) {
      const double lhs = mutual_information(mixed, a, {"W", "Wflag"});
      const double rhs = lambda * mutual_information(o0, a, {"W"}) + (1.0 - lambda) * mutual_information(o1, a, {"W"});
      worst_flag = std::max(worst_flag, std::abs(lhs - rhs));
    }
  }
  return {worst_conv >= -1e-3 && worst_flag <= 1e-9,
          (Detail{}("min_second_difference", worst_conv)("flag_gap", worst_flag)).str()};
}

// I(X';W) on the extended source equals I(YR;W) on sigma.
Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dx = 2 + i % 2, dy = 2 + (i / 2) % 2, dw = 2 + (i / 4) % 2;
    const int dv = dx * dw;  // up to 9
    const auto rho = random_density(task_seed(77, 0, i), {dx, dy}, {"X", "Y"});
    const auto v = StinespringIsometry::from_params(random_channel_params(task_seed(77, 1, i), dx, dw, dv), dx, dw, dv);
    worst = std::max(worst, equivalence_check(v, rho).gap);
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-8 && t < 10.0, (Detail{}("max_gap", worst)("seconds", t)).str()};
}

// Privacy funnel bound, correlated bits, two-letter probes.
Outcome criterion8() {
  double worst_bound = 0.0;
  std::vector<JointDistribution> sources{bsc_joint(0.1), bsc_joint(0.3)};
  for (int i = 0; i < 4; ++i) sources.push_back(random_joint(task_seed(88, 0, i), 2 + i % 2, 2 + (i / 2) % 2));
  for (const auto& p : sources) {
    const auto c = classical_pf_curve(p, p.size_x() + 2, linear_grid(0.0, p.entropy_x(), 21), default_config());
    const double eq = p.conditional_entropy_x_given_y();
    for (const auto& pt : c.points) worst_bound = std::max(worst_bound, std::max(0.0, pt.abscissa - eq) - pt.value);
  }
  const auto bits = correlated_bits();
  const auto cb = classical_pf_curve(bits, 4, linear_grid(0.0, bits.entropy_x(), 21), default_config());
  double bits_gap = 0.0;
  for (const auto& pt : cb.points) bits_gap = std::max(bits_gap, std::abs(pt.value - pt.abscissa));
  double multi = -1.0;
  for (const auto& p : {bsc_joint(0.1), sources[2]}) {
    for (double frac : {0.25, 0.5, 0.75}) {
      const auto r = multi_letter_pf_point(p, 2, frac * p.entropy_x(), p.size_x() + 2, default_config());
      multi = std::max(multi, r.multi_letter - r.single_letter);
    }
  }
  return {worst_bound <= 1e-6 && bits_gap <= 1e-3 && multi <= 1e-6,
          (Detail{}("bound_violation", worst_bound)("correlated_gap", bits_gap)("multi_excess", multi)).str()};
}

// Largest a with R(a) <= r on a convex increasing curve, by linear interpolation.
double inverse_envelope(const Curve& c, double r) {
  const auto& pts = c.points;
  if (r >= pts.back().value) return pts.back().abscissa;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].value > r) {
      const double s = (r - pts[i - 1].value) / (pts[i].value - pts[i - 1].value);
      return pts[i - 1].abscissa + s * (pts[i].abscissa - pts[i - 1].abscissa);
    }
  }
  return pts.back().abscissa;
}

// Rate region: product flatness, agreement with the inverted IB curve, purity identity.
Outcome criterion9() {
  const auto prod = random_product_state(99, 2, 2);
  const double h_y_prod = entropy_of(prod, {"Y"});
  const auto flat = wak_boundary(purify(prod, "R"), linear_grid(0.0, entropy_of(prod, {"X"}), 11), default_config());
  double flat_gap = 0.0;
  for (const auto& p : flat.points) flat_gap = std::max(flat_gap, std::abs(p.q_y - h_y_prod));

  const auto rho = rho3(0.4);
  const double s_x = entropy_of(rho, {"X"});
  const double h_y = entropy_of(rho, {"Y"});
  const auto psi = purify(rho, "R");
  const auto qx = linear_grid(0.0, s_x, 11);
  const auto region = wak_boundary(psi, qx, default_config());
  const auto ib = quantum_ib_curve(rho, default_config(), linear_grid(0.0, mutual_information(rho, {"X"}, {"Y"}), 41));
  double agree = 0.0;
  for (std::size_t i = 0; i < qx.size(); ++i) {
    const double expected = h_y - 0.5 * inverse_envelope(ib, 2.0 * qx[i]);
    agree = std::max(agree, std::abs(region.points[i].q_y - expected));
  }

  double purity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dx = 2 + i % 2, dy = 2 + (i / 2) % 2, dw = 2 + (i / 4) % 2;
    const auto src = random_density(task_seed(98, 0, i), {dx, dy}, {"X", "Y"});
    const auto v = StinespringIsometry::from_params(random_channel_params(task_seed(98, 1, i), dx, dw, dx * dw), dx, dw, dx * dw);
    purity = std::max(purity, purity_complement_check(v, purify(src, "R")));
  }
  return {flat_gap <= 1e-2 && agree <= 1e-2 && purity <= 1e-9,
          (Detail{}("flat_gap", flat_gap)("inverse_ib_gap", agree)("purity_gap", purity)).str()};
}

// Additivity at desk scale.
Outcome criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rho = rho3(0.4);
  const double s_x = entropy_of(rho, {"X"});
  const auto report = additivity_check(purify(rho, "R"), {0.25 * s_x, 0.5 * s_x, 0.75 * s_x}, default_config());
  Detail d;
  for (const auto& p : report.probes) {
    char key[32];
    std::snprintf(key, sizeof key, "diff@%.3f", p.q_x);
    d(key, p.difference);
  }
  const double t = seconds_since(t0);
  d("seconds", t);
  return {report.pass && t < 900.0, d.str()};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria{
    {"BSC oracle match", criterion1},
    {"quantum-classical consistency", criterion2},
    {"pure-state identity", criterion3},
    {"dimension study", criterion4},
    {"classical-state endpoint", criterion5},
    {"convexity and flagged decomposition", criterion6},
    {"equivalence identity", criterion7},
    {"privacy funnel", criterion8},
    {"rate region", criterion9},
    {"additivity", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::size_t first = 1, last = kCriteria.size();
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(kCriteria.size())) {
      std::cerr << "criterion must be 1.." << kCriteria.size() << '\n';
      return 2;
    }
    first = last = static_cast<std::size_t>(n);
  }
  bool all = true;
  for (std::size_t i = first; i <= last; ++i) {
    const auto& [name, fn] = kCriteria[i - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
