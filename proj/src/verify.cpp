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

#include "bottleneck/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "bottleneck/channels.hpp"
#include "bottleneck/classical_ib.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/parallel.hpp"
#include "bottleneck/quantum_solver.hpp"
#include "bottleneck/rate_region.hpp"
#include "bottleneck/states.hpp"

namespace bottleneck {

namespace {

struct Recorder {
  std::string suite;
  std::vector<CheckResult>& out;

  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r{suite, name, false, {}};
    try {
      std::tie(r.pass, r.detail) = body();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
};

std::string fmt(const char* label, double v) {
  std::ostringstream os;
  os << label << '=' << v;
  return os.str();
}

void core_suite(Recorder& rec, std::uint64_t seed) {
  rec.check("pure tripartite entropy decomposition", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto psi = random_pure(task_seed(seed, 1, i), {2, 2, 2}, {"A", "B", "E"});
      const double s = entropy_of(psi, {"A"});
      const double gap = s - 0.5 * mutual_information(psi, {"A"}, {"B"}) -
                         0.5 * mutual_information(psi, {"A"}, {"E"});
      worst = std::max(worst, std::abs(gap));
    }
    return std::pair{worst <= 1e-9, fmt("max_gap", worst)};
  });
  rec.check("mutual information bounds", [&] {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto rho = random_density(task_seed(seed, 2, i), {2, 3}, {"A", "B"});
      const double mi = mutual_information(rho, {"A"}, {"B"});
      const double cap = 2.0 * std::min(entropy_of(rho, {"A"}), entropy_of(rho, {"B"}));
      worst = std::max({worst, mi - cap, -mi});
    }
    return std::pair{worst <= 1e-9, fmt("max_violation", worst)};
  });
  rec.check("purification round trip", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int d = 2 + i % 3;
      const auto rho = random_density(task_seed(seed, 3, i), {d}, {"A"});
      const auto back = partial_trace(purify(rho, "R"), {"A"});
      worst = std::max(worst, (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    }
    return std::pair{worst <= 1e-10, fmt("max_entry_error", worst)};
  });
  rec.check("classical embedding preserves entropies", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto p = random_joint(task_seed(seed, 4, i), 2 + i % 3, 2 + (i / 3) % 3);
      const auto rho = embed_classical_joint(p);
      worst = std::max({worst, std::abs(entropy_of(rho, {"X"}) - p.entropy_x()),
                        std::abs(entropy_of(rho, {"Y"}) - p.entropy_y()),
                        std::abs(mutual_information(rho, {"X"}, {"Y"}) - p.mutual_information())});
    }
    return std::pair{worst <= 1e-10, fmt("max_gap", worst)};
  });
}

void channels_suite(Recorder& rec, std::uint64_t seed) {
  const auto rho = rho3(0.4);
  const double i_xy = mutual_information(rho, {"X"}, {"Y"});
  rec.check("isometry defect", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto v = StinespringIsometry::from_params(random_channel_params(task_seed(seed, 5, i), 2, 3, 6), 2, 3, 6);
      worst = std::max(worst, isometry_defect(v.matrix()));
    }
    return std::pair{worst <= 1e-10, fmt("max_defect", worst)};
  });
  rec.check("data processing and trace preservation", [&] {
    double worst_dp = -1.0, worst_tr = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto v = StinespringIsometry::from_params(random_channel_params(task_seed(seed, 6, i), 2, 3, 6), 2, 3, 6);
      const auto out = apply_channel(v, rho, "X", "W");
      worst_dp = std::max(worst_dp, mutual_information(out, {"Y"}, {"W"}) - i_xy);
      worst_tr = std::max(worst_tr, std::abs(out.matrix().trace().real() - 1.0));
    }
    return std::pair{worst_dp <= 1e-9 && worst_tr <= 1e-10,
                     fmt("max_excess", worst_dp) + " " + fmt("max_trace_error", worst_tr)};
  });
  rec.check("flagged channel decomposition", [&] {
    const auto psi = purify(rho, "R").density();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto v0 = StinespringIsometry::from_params(random_channel_params(task_seed(seed, 7, i), 2, 2, 4), 2, 2, 4);
      const auto v1 = StinespringIsometry::from_params(random_channel_params(task_seed(seed, 8, i), 2, 2, 4), 2, 2, 4);
      const double lambda = (i + 0.5) / 50.0;
      const auto mixed = flagged_mix(v0, v1, lambda).apply(psi, "X");
      const auto out0 = apply_channel(v0, psi, "X");
      const auto out1 = apply_channel(v1, psi, "X");
      for (const Names& a : {Names{"Y"}, Names{"Y", "R"}}) {
        const double lhs = mutual_information(mixed, a, {"W", "Wflag"});
        const double rhs = lambda * mutual_information(out0, a, {"W"}) +
                           (1.0 - lambda) * mutual_information(out1, a, {"W"});
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    return std::pair{worst <= 1e-9, fmt("max_gap", worst)};
  });
}

SolverConfig quick_config(std::uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 3;
  cfg.max_iters = 150;
  cfg.beta_grid.clear();
  for (int i = 0; i < 16; ++i) cfg.beta_grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 15.0));
  return cfg;
}

void classical_suite(Recorder& rec, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  rec.check("binary symmetric channel matches analytic curve", [&] {
    const auto p = bsc_joint(0.1);
    const auto grid = linear_grid(0.0, p.mutual_information(), 21);
    const auto c = classical_ib_curve(p, 4, grid, cfg);
    double sup = 0.0;
    for (const auto& pt : c.points) sup = std::max(sup, std::abs(pt.value - bsc_ib_rate(pt.abscissa, 0.1)));
    return std::pair{sup <= 2e-3, fmt("sup_gap", sup)};
  });
  rec.check("bottleneck and funnel curves are convex and bounded", [&] {
    double worst_convex = 0.0, worst_bound = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto p = random_joint(task_seed(seed, 9, i), 3, 3);
      const auto ib = classical_ib_curve(p, 5, linear_grid(0.0, p.mutual_information(), 11), cfg);
      const auto pf = classical_pf_curve(p, 5, linear_grid(0.0, p.entropy_x(), 11), cfg);
      worst_convex = std::min({worst_convex, convexity_check(ib).min_second_difference,
                               convexity_check(pf).min_second_difference});
      for (const auto& pt : pf.points) worst_bound = std::max(worst_bound, *pt.reference - pt.value);
    }
    return std::pair{worst_convex >= -1e-6 && worst_bound <= 1e-6,
                     fmt("min_second_difference", worst_convex) + " " + fmt("bound_violation", worst_bound)};
  });
  rec.check("two-letter funnel never exceeds one letter", [&] {
    const auto p = bsc_joint(0.1);
    double worst = -1.0;
    for (double t : {0.2, 0.5, 0.8}) {
      const auto r = multi_letter_pf_point(p, 2, t, 4, cfg);
      worst = std::max(worst, r.multi_letter - r.single_letter);
    }
    return std::pair{worst <= 1e-6, fmt("max_excess", worst)};
  });
}

void quantum_suite(Recorder& rec, std::uint64_t seed) {
  const auto rho = rho3(0.4);
  rec.check("two routes to I(YR;W) agree", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto v = StinespringIsometry::from_params(random_channel_params(task_seed(seed, 10, i), 2, 3, 6), 2, 3, 6);
      worst = std::max(worst, equivalence_check(v, rho).gap);
    }
    return std::pair{worst <= 1e-8, fmt("max_gap", worst)};
  });
  rec.check("bottleneck envelope convex with replayable witnesses", [&] {
    const auto src = TripartiteSource::from_density(rho);
    const auto c = quantum_ib_curve(rho, quick_config(seed), linear_grid(0.0, src.mutual_information_xy(), 9));
    double replay = 0.0;
    for (const auto& pt : c.points) {
      const auto [r, a] = replay_witness(std::get<QuantumWitness>(pt.witness), rho);
      replay = std::max({replay, std::abs(r - pt.value), std::max(0.0, pt.abscissa - 1e-6 - a)});
    }
    const auto conv = convexity_check(c, 1e-3);
    return std::pair{conv.pass && replay <= 1e-8,
                     fmt("min_second_difference", conv.min_second_difference) + " " + fmt("replay_gap", replay)};
  });
  rec.check("pure source gives the diagonal", [&] {
    const auto pure = random_pure_two_qubit(seed);
    const auto src = TripartiteSource::from_density(pure);
    const auto c = normalize_curve(
        quantum_ib_curve(pure, quick_config(seed), linear_grid(0.0, src.mutual_information_xy(), 6)), pure,
        NormalizeMode::kBottleneck);
    double sup = 0.0;
    for (const auto& pt : c.points) sup = std::max(sup, std::abs(pt.value - pt.abscissa));
    return std::pair{sup <= 5e-3, fmt("sup_gap", sup)};
  });
}

void rate_suite(Recorder& rec, std::uint64_t seed) {
  rec.check("purity complement identity", [&] {
    const auto psi = purify(rho3(0.4).relabeled({"X", "Y"}), "R");
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto v = StinespringIsometry::from_params(random_channel_params(task_seed(seed, 11, i), 2, 3, 6), 2, 3, 6);
      worst = std::max(worst, purity_complement_check(v, psi));
    }
    return std::pair{worst <= 1e-9, fmt("max_gap", worst)};
  });
  rec.check("product source boundary is flat", [&] {
    const auto rho = random_product_state(seed, 2, 2);
    const auto psi = purify(rho, "R");
    const double h_y = entropy_of(rho, {"Y"});
    const auto b = wak_boundary(psi, linear_grid(0.0, entropy_of(rho, {"X"}), 5), quick_config(seed));
    double sup = 0.0;
    for (const auto& p : b.points) sup = std::max(sup, std::abs(p.q_y - h_y));
    return std::pair{sup <= 1e-2, fmt("sup_gap", sup)};
  });
}

}  // namespace

std::vector<std::string> suite_names() { return {"core", "channels", "classical", "quantum", "rate"}; }

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ValidationError("unknown suite " + suite);
  }
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (want("core")) {
    Recorder r{"core", out};
    core_suite(r, seed);
  }
  if (want("channels")) {
    Recorder r{"channels", out};
    channels_suite(r, seed);
  }
  if (want("classical")) {
    Recorder r{"classical", out};
    classical_suite(r, seed);
  }
  if (want("quantum")) {
    Recorder r{"quantum", out};
    quantum_suite(r, seed);
  }
  if (want("rate")) {
    Recorder r{"rate", out};
    rate_suite(r, seed);
  }
  return out;
}

}  // namespace bottleneck
