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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bottleneck/curve.hpp"
#include "bottleneck/quantum_core.hpp"
#include "bottleneck/rate_region.hpp"

namespace bottleneck {

/// Source description from the command line: `kind:key=value,...` for the
/// builtins (rho3, bsc, pure2q, classical-joint, random) or a path to a
/// state file.
struct StateSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  std::filesystem::path path;  // set when kind == "file"

  static StateSpec parse(std::string_view text);
  DensityOperator build() const;
  std::string to_string() const;
};

// State files: {"dims": [...], "labels": [...], "matrix": [[[re, im], ...], ...]}.
nlohmann::json state_to_json(const DensityOperator& rho);
DensityOperator state_from_json(const nlohmann::json& j);
DensityOperator read_state_file(const std::filesystem::path& path);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

nlohmann::json witness_to_json(const Witness& w);
nlohmann::json curve_to_json(const Curve& c);
nlohmann::json region_to_json(const RegionBoundary& b);

std::string curve_to_csv(const Curve& c);
std::string region_to_csv(const RegionBoundary& b);
/// Rows of a CSV file written by curve_to_csv, header skipped.
std::vector<std::vector<double>> parse_csv_numbers(std::string_view text);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                       const std::string& y_label);

/// Writes `contents` to `path`; ValidationError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string version;
  double wall_time_seconds = 0.0;
  std::map<std::string, std::string> digests;  // file name -> SHA-256 hex

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  bool operator==(const RunManifest&) const = default;
};

}  // namespace bottleneck
