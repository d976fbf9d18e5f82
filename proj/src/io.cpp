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

#include "bottleneck/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bottleneck/channels.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/states.hpp"

namespace bottleneck {

namespace {

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ValidationError("state parameter " + key + ": not a number: " + text);
  }
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ValidationError("seed must be a non-negative integer");
  return v;
}

const std::vector<std::string>& builtin_kinds() {
  static const std::vector<std::string> kinds{"rho3", "bsc", "pure2q", "classical-joint", "random"};
  return kinds;
}

}  // namespace

StateSpec StateSpec::parse(std::string_view text) {
  if (text.empty()) throw ValidationError("empty state spec");
  StateSpec s;
  const auto colon = text.find(':');
  const std::string head(text.substr(0, colon));
  if (std::find(builtin_kinds().begin(), builtin_kinds().end(), head) == builtin_kinds().end()) {
    if (head == "file" && colon != std::string_view::npos) {
      s.path = std::string(text.substr(colon + 1));
    } else {
      s.path = std::string(text);
    }
    s.kind = "file";
    return s;
  }
  s.kind = head;
  if (colon == std::string_view::npos) return s;
  std::string rest(text.substr(colon + 1));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("state parameter must look like key=value: " + item);
    }
    s.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return s;
}

DensityOperator StateSpec::build() const {
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
  };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : params) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
        throw ValidationError("unknown parameter '" + k + "' for state " + kind);
      }
    }
  };
  auto number = [&](const std::string& key, double fallback) {
    const auto* v = get(key);
    return v ? parse_number(key, *v) : fallback;
  };
  auto integer = [&](const std::string& key, int fallback) {
    const double v = number(key, fallback);
    if (v != std::floor(v) || v < 1 || v > 64) throw ValidationError(key + " must be an integer in [1, 64]");
    return static_cast<int>(v);
  };
  if (kind == "file") return read_state_file(path);
  if (kind == "rho3") {
    allow({"p"});
    return rho3(number("p", 0.4));
  }
  if (kind == "bsc") {
    allow({"delta"});
    return bsc_state(number("delta", 0.1));
  }
  if (kind == "pure2q") {
    allow({"seed"});
    return random_pure_two_qubit(get("seed") ? parse_seed(*get("seed")) : 0);
  }
  if (kind == "classical-joint") {
    allow({"nx", "ny", "table"});
    const int nx = integer("nx", 2);
    const int ny = integer("ny", 2);
    const auto* table = get("table");
    if (!table) throw ValidationError("classical-joint needs table=v;v;... (row-major)");
    std::vector<double> vals;
    std::stringstream ss(*table);
    std::string item;
    while (std::getline(ss, item, ';')) vals.push_back(parse_number("table", item));
    if (static_cast<int>(vals.size()) != nx * ny) {
      throw ValidationError("classical-joint table needs nx*ny entries");
    }
    RMatrix t(nx, ny);
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) t(i, j) = vals[static_cast<std::size_t>(i * ny + j)];
    }
    return embed_classical_joint(JointDistribution(t));
  }
  if (kind == "random") {
    allow({"seed", "dx", "dy", "classical"});
    const std::uint64_t seed = get("seed") ? parse_seed(*get("seed")) : 0;
    const int dx = integer("dx", 2);
    const int dy = integer("dy", 2);
    if (number("classical", 0.0) != 0.0) return embed_classical_joint(random_joint(seed, dx, dy));
    return random_density(seed, {dx, dy}, {"X", "Y"});
  }
  throw ValidationError("unknown state kind " + kind);
}

std::string StateSpec::to_string() const {
  if (kind == "file") return "file:" + path.string();
  std::string out = kind;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep + k + "=" + v;
    sep = ',';
  }
  return out;
}

nlohmann::json state_to_json(const DensityOperator& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < rho.matrix().cols(); ++j) {
      row.push_back({rho.matrix()(i, j).real(), rho.matrix()(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"dims", rho.dims()}, {"labels", rho.labels()}, {"matrix", std::move(rows)}};
}

DensityOperator state_from_json(const nlohmann::json& j) {
  try {
    const auto dims = j.at("dims").get<std::vector<int>>();
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto& rows = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != n) throw ValidationError("state matrix is not square");
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto& z = row.at(static_cast<std::size_t>(k));
        if (z.size() != 2) throw ValidationError("complex entries must be [re, im] pairs");
        m(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return DensityOperator(std::move(m), dims, labels);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed state file: ") + e.what());
  }
}

DensityOperator read_state_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("state file " + path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw ValidationError("cannot format number");
  return std::string(buf, ptr);
}

nlohmann::json witness_to_json(const Witness& w) {
  if (const auto* c = std::get_if<ConditionalChannel>(&w)) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index x = 0; x < c->rows().rows(); ++x) {
      std::vector<double> r(c->rows().row(x).begin(), c->rows().row(x).end());
      rows.push_back(r);
    }
    return {{"type", "conditional-channel"}, {"rows", std::move(rows)}};
  }
  if (const auto* q = std::get_if<QuantumWitness>(&w)) {
    auto branch = [&](const RVector& theta) {
      nlohmann::json b;
      b["params"] = std::vector<double>(theta.begin(), theta.end());
      const auto v = StinespringIsometry::from_params(theta, q->d_in, q->d_w, q->d_v);
      nlohmann::json m = nlohmann::json::array();
      for (Eigen::Index i = 0; i < v.matrix().rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < v.matrix().cols(); ++k) {
          row.push_back({v.matrix()(i, k).real(), v.matrix()(i, k).imag()});
        }
        m.push_back(std::move(row));
      }
      b["isometry"] = std::move(m);
      return b;
    };
    nlohmann::json j{{"type", "flagged-isometry"},
                     {"lambda", q->lambda},
                     {"d_in", q->d_in},
                     {"d_w", q->d_w},
                     {"d_v", q->d_v}};
    j["branches"] = nlohmann::json::array({branch(q->params0)});
    if (q->params1.size() > 0) j["branches"].push_back(branch(q->params1));
    return j;
  }
  return nullptr;
}

nlohmann::json curve_to_json(const Curve& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points) {
    nlohmann::json j{{"abscissa", p.abscissa},
                     {"value", p.value},
                     {"achieved_constraint", p.achieved_constraint},
                     {"converged", p.converged},
                     {"witness", witness_to_json(p.witness)}};
    if (p.reference) j["reference"] = *p.reference;
    pts.push_back(std::move(j));
  }
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << c.config_hash;
  return {{"kind", c.kind},
          {"grid", c.grid_spec},
          {"config_hash", hash.str()},
          {"diagnostics", c.diagnostics},
          {"points", std::move(pts)}};
}

nlohmann::json region_to_json(const RegionBoundary& b) {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    pts.push_back({{"q_x", b.points[i].q_x},
                   {"q_y", b.points[i].q_y},
                   {"converged", i < b.converged.size() && b.converged[i]},
                   {"witness", i < b.witnesses.size() ? witness_to_json(b.witnesses[i]) : nullptr}});
  }
  std::ostringstream src, cfg;
  src << std::hex << std::setw(16) << std::setfill('0') << b.source_fingerprint;
  cfg << std::hex << std::setw(16) << std::setfill('0') << b.config_hash;
  return {{"kind", "rate-region"}, {"source", src.str()}, {"config_hash", cfg.str()}, {"points", pts}};
}

std::string curve_to_csv(const Curve& c) {
  const bool with_reference =
      std::any_of(c.points.begin(), c.points.end(), [](const auto& p) { return p.reference.has_value(); });
  std::string out = "abscissa,value,achieved_constraint,converged";
  if (with_reference) out += ",reference";
  out += '\n';
  for (const auto& p : c.points) {
    out += format_double(p.abscissa) + ',' + format_double(p.value) + ',' +
           format_double(p.achieved_constraint) + ',' + (p.converged ? "1" : "0");
    if (with_reference) out += ',' + (p.reference ? format_double(*p.reference) : std::string());
    out += '\n';
  }
  return out;
}

std::string region_to_csv(const RegionBoundary& b) {
  std::string out = "q_x,q_y,converged\n";
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    out += format_double(b.points[i].q_x) + ',' + format_double(b.points[i].q_y) + ',' +
           (i < b.converged.size() && b.converged[i] ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<std::vector<double>> parse_csv_numbers(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  bool header = true;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto comma = line.find(',', pos);
      if (comma == std::string_view::npos) comma = line.size();
      const auto cell = line.substr(pos, comma - pos);
      double v = std::nan("");
      if (!cell.empty()) {
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) {
          throw ValidationError("csv cell is not a number: " + std::string(cell));
        }
      }
      row.push_back(v);
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                       const std::string& y_label) {
  constexpr double kW = 640, kH = 480, kLeft = 70, kRight = 20, kTop = 20, kBottom = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  for (const auto& s : series) {
    for (double x : s.x) x1 = std::max(x1, x);
    for (double y : s.y) y1 = std::max(y1, y);
  }
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); };
  auto py = [&](double y) { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); };
  static const char* kColors[] = {"#1f4e9c", "#c0392b", "#111111", "#2e8b57", "#8e44ad", "#d4a017"};
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(y0)
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x0) << "\" y2=\"" << py(y1)
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << py(y0) + 18 << "\" text-anchor=\"middle\">" << xv
       << "</text>\n";
    os << "<text x=\"" << px(x0) - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << yv
       << "</text>\n";
  }
  os << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 15
     << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  os << "<text transform=\"translate(18," << (kTop + kH - kBottom) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << y_label << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      os << (k ? " " : "") << px(s.x[k]) << ',' << py(s.y[k]);
    }
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 * (i + 1) << "\" fill=\"" << color
       << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write " + path.string());
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) throw ValidationError("cannot write " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command}, {"config", config},   {"seed", seed},
          {"version", version}, {"wall_time_seconds", wall_time_seconds}, {"digests", digests}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    m.digests = j.at("digests").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

}  // namespace bottleneck
