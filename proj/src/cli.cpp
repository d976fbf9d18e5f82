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

#include "bottleneck/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "bottleneck/classical_ib.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/io.hpp"
#include "bottleneck/quantum_solver.hpp"
#include "bottleneck/rate_region.hpp"
#include "bottleneck/states.hpp"
#include "bottleneck/verify.hpp"

namespace bottleneck {

namespace {

struct Options {
  std::string state = "rho3:p=0.4";
  bool classical = false;
  bool quantum = false;
  bool dual = false;
  int d_w = 0;
  int d_v = 0;
  int grid = 11;
  std::string beta_grid;
  int restarts = 20;
  std::uint64_t seed = 0;
  bool normalize = false;
  std::string out;
  std::string format = "csv";
  std::string plot;
  std::string dw_list = "2,3,4";
  std::string suite = "all";
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ValidationError("bad number in list: " + item);
    v.push_back(x);
  }
  if (v.empty()) throw ValidationError("empty list");
  return v;
}

// "log:lo:hi:n" or a comma-separated list.
std::vector<double> parse_beta_grid(const std::string& spec) {
  if (spec.rfind("log:", 0) == 0) {
    std::string rest = spec.substr(4);
    for (char& c : rest) {
      if (c == ':') c = ',';
    }
    const auto v = parse_list(rest);
    if (v.size() != 3 || v[0] <= 0.0 || v[1] <= v[0] || v[2] < 2 || v[2] != std::floor(v[2])) {
      throw ValidationError("beta grid must be log:lo:hi:n with 0 < lo < hi and n >= 2");
    }
    std::vector<double> out;
    const int n = static_cast<int>(v[2]);
    for (int i = 0; i < n; ++i) {
      out.push_back(std::exp(std::log(v[0]) + (std::log(v[1]) - std::log(v[0])) * i / (n - 1)));
    }
    return out;
  }
  return parse_list(spec);
}

void add_common(CLI::App* app, Options& o, bool curve) {
  app->add_option("--state", o.state, "builtin (rho3:p=0.4, bsc:delta=0.1, pure2q:seed=1, "
                                      "classical-joint:nx=2,ny=2,table=..., random:seed=1,dx=2,dy=2) or file");
  app->add_option("--seed", o.seed, "random seed");
  if (!curve) return;
  auto* c = app->add_flag("--classical", o.classical, "classical solver on a diagonal state");
  auto* q = app->add_flag("--quantum", o.quantum, "quantum solver (default)");
  c->excludes(q);
  app->add_option("--dw", o.d_w, "dimension of W")->check(CLI::NonNegativeNumber);
  app->add_option("--dv", o.d_v, "dimension of the environment V")->check(CLI::NonNegativeNumber);
  app->add_option("--grid", o.grid, "number of grid points")->check(CLI::Range(2, 10000));
  app->add_option("--beta-grid", o.beta_grid, "log:lo:hi:n or comma list");
  app->add_option("--restarts", o.restarts, "random restarts per multiplier")->check(CLI::PositiveNumber);
  app->add_flag("--normalize", o.normalize, "normalized axes");
  app->add_option("--out", o.out, "output file");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--plot", o.plot, "SVG plot output");
}

SolverConfig make_config(const Options& o) {
  SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.d_w = o.d_w;
  cfg.d_v = o.d_v;
  if (!o.beta_grid.empty()) cfg.beta_grid = parse_beta_grid(o.beta_grid);
  cfg.validate();
  return cfg;
}

nlohmann::json config_json(const std::string& command, const Options& o) {
  return {{"command", command}, {"state", o.state},     {"classical", o.classical},
          {"dual", o.dual},     {"dw", o.d_w},          {"dv", o.d_v},
          {"grid", o.grid},     {"beta_grid", o.beta_grid}, {"restarts", o.restarts},
          {"seed", o.seed},     {"normalize", o.normalize}, {"format", o.format},
          {"dw_list", o.dw_list}, {"suite", o.suite}};
}

class Session {
 public:
  Session(std::string command, const Options& o, std::ostream& out)
      : command_(std::move(command)), o_(o), out_(out), start_(std::chrono::steady_clock::now()) {}

  // Writes to --out, or to stdout when no path was given.
  void emit(const std::string& text) {
    if (o_.out.empty()) {
      out_ << text;
      return;
    }
    write_text_file(o_.out, text);
    digests_[std::filesystem::path(o_.out).filename().string()] = sha256_hex(text);
  }

  void plot(const std::vector<PlotSeries>& series, const std::string& x, const std::string& y) {
    if (o_.plot.empty()) return;
    const std::string svg = render_svg(series, x, y);
    write_text_file(o_.plot, svg);
    digests_[std::filesystem::path(o_.plot).filename().string()] = sha256_hex(svg);
  }

  void finish() {
    if (digests_.empty()) return;
    RunManifest m;
    m.command = command_;
    m.config = config_json(command_, o_);
    m.seed = o_.seed;
    m.version = kToolVersion;
    m.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    m.digests = digests_;
    const std::string base = o_.out.empty() ? o_.plot : o_.out;
    write_text_file(base + ".manifest.json", m.to_json().dump(2) + "\n");
  }

 private:
  std::string command_;
  const Options& o_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::string, std::string> digests_;
};

PlotSeries series_of(const Curve& c, const std::string& name) {
  return {name, c.abscissae(), c.values()};
}

std::string render_curve(const Curve& c, const Options& o) {
  return o.format == "json" ? curve_to_json(c).dump(2) + "\n" : curve_to_csv(c);
}

void axis_labels(const std::string& kind, bool normalized, std::string& x, std::string& y) {
  if (kind == "ib") {
    x = normalized ? "a" : "I(Y;W)";
    y = normalized ? "R\xCC\x84_q(a)" : "I(YR;W)";
  } else if (kind == "pf") {
    x = normalized ? "t" : "I(YR;W)";
    y = normalized ? "G\xCC\x84_q(t)" : "I(Y;W)";
  } else {
    x = normalized ? "a" : "I(Y;W)";
    y = normalized ? "P\xCC\x84_q(a)" : "I(YR;W)";
  }
}

int cmd_state(const Options& o, std::ostream& out) {
  const StateSpec spec = StateSpec::parse(o.state);
  const DensityOperator rho = spec.build();
  Session s("state", o, out);
  if (!o.out.empty()) {
    s.emit(state_to_json(rho).dump(2) + "\n");
  } else {
    const auto& l = rho.labels();
    out << "state " << spec.to_string() << "\n";
    out << "dims";
    for (int d : rho.dims()) out << ' ' << d;
    out << "\nlabels";
    for (const auto& n : l) out << ' ' << n;
    out << '\n';
    if (l.size() == 2) {
      out << "S(" << l[0] << ") " << format_double(entropy_of(rho, {l[0]})) << '\n';
      out << "S(" << l[1] << ") " << format_double(entropy_of(rho, {l[1]})) << '\n';
      out << "I(" << l[0] << ';' << l[1] << ") "
          << format_double(mutual_information(rho, {l[0]}, {l[1]})) << '\n';
    }
  }
  s.finish();
  return kExitOk;
}

int cmd_curve(const std::string& kind, const Options& o, std::ostream& out) {
  Session s(kind, o, out);
  const StateSpec spec = StateSpec::parse(o.state);
  const DensityOperator rho = spec.build();
  if (rho.labels().size() != 2) throw ValidationError("curve commands need a bipartite state");
  SolverConfig cfg = make_config(o);
  const auto& l = rho.labels();
  const double i_xy = mutual_information(rho, {l[0]}, {l[1]});
  const double h_x = entropy_of(rho, {l[0]});
  Curve c;
  std::string mode = kind;
  if (kind == "pf" && o.dual) mode = "pf-dual";
  if (o.classical) {
    const JointDistribution p = diagonal_joint(rho);
    const int d_w = o.d_w > 0 ? o.d_w : p.size_x() + 2;
    if (mode == "ib") {
      c = classical_ib_curve(p, d_w, linear_grid(0.0, p.mutual_information(), o.grid), cfg);
      if (spec.kind == "bsc") {
        const auto it = spec.params.find("delta");
        const double delta = it == spec.params.end() ? 0.1 : std::stod(it->second);
        for (auto& pt : c.points) pt.reference = bsc_ib_rate(pt.abscissa, delta);
      }
    } else if (mode == "pf") {
      c = classical_pf_curve(p, d_w, linear_grid(0.0, p.entropy_x(), o.grid), cfg);
    } else {
      c = classical_pf_dual_curve(p, d_w, linear_grid(0.0, p.mutual_information(), o.grid), cfg);
    }
  } else if (mode == "ib") {
    c = quantum_ib_curve(rho, cfg, linear_grid(0.0, i_xy, o.grid));
  } else if (mode == "pf") {
    c = quantum_pf_curve(rho, cfg, linear_grid(0.0, 2.0 * h_x, o.grid));
  } else {
    c = quantum_pf_dual_curve(rho, cfg, linear_grid(0.0, i_xy, o.grid));
  }
  if (o.normalize) {
    c = normalize_curve(c, rho, mode == "ib" ? NormalizeMode::kBottleneck : NormalizeMode::kFunnel);
  }
  s.emit(render_curve(c, o));
  std::string x, y;
  axis_labels(mode, o.normalize, x, y);
  s.plot({series_of(c, c.kind)}, x, y);
  s.finish();
  return kExitOk;
}

int cmd_rate_region(const Options& o, std::ostream& out) {
  Session s("rate-region", o, out);
  const DensityOperator rho = StateSpec::parse(o.state).build();
  if (rho.labels().size() != 2) throw ValidationError("rate-region needs a bipartite state");
  const SolverConfig cfg = make_config(o);
  const PureState psi = purify(rho.relabeled({"X", "Y"}), "R");
  const auto grid = linear_grid(0.0, entropy_of(rho, {rho.labels()[0]}), o.grid);
  const RegionBoundary b = wak_boundary(psi, grid, cfg);
  s.emit(o.format == "json" ? region_to_json(b).dump(2) + "\n" : region_to_csv(b));
  PlotSeries ps{"boundary", {}, {}};
  for (const auto& p : b.points) {
    ps.x.push_back(p.q_x);
    ps.y.push_back(p.q_y);
  }
  s.plot({ps}, "Q_X", "Q_Y");
  s.finish();
  return kExitOk;
}

int cmd_dim_study(const Options& o, std::ostream& out) {
  Session s("dim-study", o, out);
  const DensityOperator rho = StateSpec::parse(o.state).build();
  if (rho.labels().size() != 2) throw ValidationError("dim-study needs a bipartite state");
  const SolverConfig cfg = make_config(o);
  std::vector<int> dims;
  for (double d : parse_list(o.dw_list)) {
    if (d < 1 || d != std::floor(d)) throw ValidationError("--dw-list entries must be positive integers");
    dims.push_back(static_cast<int>(d));
  }
  const double i_xy = mutual_information(rho, {rho.labels()[0]}, {rho.labels()[1]});
  auto curves = dimension_study(rho, dims, cfg, linear_grid(0.0, i_xy, o.grid));
  if (o.normalize) {
    for (auto& c : curves) c = normalize_curve(c, rho, NormalizeMode::kBottleneck);
  }
  std::string text;
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
      j.push_back({{"d_w", dims[i]}, {"curve", curve_to_json(curves[i])}});
    }
    text = j.dump(2) + "\n";
  } else {
    text = "d_w,abscissa,value,achieved_constraint,converged\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
      for (const auto& p : curves[i].points) {
        text += std::to_string(dims[i]) + ',' + format_double(p.abscissa) + ',' +
                format_double(p.value) + ',' + format_double(p.achieved_constraint) + ',' +
                (p.converged ? "1" : "0") + '\n';
      }
    }
  }
  s.emit(text);
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    series.push_back(series_of(curves[i], "d_W=" + std::to_string(dims[i])));
  }
  std::string x, y;
  axis_labels("ib", o.normalize, x, y);
  s.plot(series, x, y);
  s.finish();
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto results = run_suite(o.suite, o.seed);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.detail << ")\n";
    ok = ok && r.pass;
  }
  out << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information bottleneck, privacy funnel and rate region lab", "bottleneck_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto* state = app.add_subcommand("state", "build a state and print its entropies");
  add_common(state, o, false);
  state->add_option("--out", o.out, "write the state as JSON");

  auto* ib = app.add_subcommand("ib", "bottleneck curve");
  add_common(ib, o, true);
  auto* pf = app.add_subcommand("pf", "privacy funnel curve");
  add_common(pf, o, true);
  pf->add_flag("--dual", o.dual, "max I(YR;W) subject to I(Y;W) <= a");

  auto* rr = app.add_subcommand("rate-region", "boundary of the helper rate region");
  add_common(rr, o, true);

  auto* ds = app.add_subcommand("dim-study", "bottleneck curves for several dimensions of W");
  add_common(ds, o, true);
  ds->add_option("--dw-list", o.dw_list, "comma list of d_W values");

  auto* vf = app.add_subcommand("verify", "property suites");
  vf->add_option("--suite", o.suite, "core, channels, classical, quantum, rate or all");
  vf->add_option("--seed", o.seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ExtrasError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "RequiredError" && app.get_subcommands().empty()) {
      err << e.what() << '\n' << app.help();
      return kExitUsage;
    }
    err << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (state->parsed()) return cmd_state(o, out);
    if (ib->parsed()) return cmd_curve("ib", o, out);
    if (pf->parsed()) return cmd_curve("pf", o, out);
    if (rr->parsed()) return cmd_rate_region(o, out);
    if (ds->parsed()) return cmd_dim_study(o, out);
    return cmd_verify(o, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScaleError& e) {
    err << "too large: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace bottleneck
