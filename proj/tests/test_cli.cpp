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
#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "bottleneck/classical_ib.hpp"
#include "bottleneck/cli.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/io.hpp"
#include "bottleneck/quantum_solver.hpp"
#include "bottleneck/states.hpp"

using namespace bottleneck;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "bottleneck_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(StateSpec, Builtins) {
  EXPECT_NEAR(entropy_of(StateSpec::parse("rho3:p=0.4").build(), {"X"}), 0.7219280948873623, 1e-12);
  EXPECT_NEAR(mutual_information(StateSpec::parse("bsc:delta=0.1").build(), {"X"}, {"Y"}),
              0.5310044064107187, 1e-12);
  const auto cj = StateSpec::parse("classical-joint:nx=2,ny=2,table=0.5;0;0;0.5").build();
  EXPECT_NEAR(mutual_information(cj, {"X"}, {"Y"}), 1.0, 1e-12);
  EXPECT_THROW(StateSpec::parse("rho3:p=1.5").build(), ValidationError);
  EXPECT_THROW(StateSpec::parse("rho3:q=0.5").build(), ValidationError);
  EXPECT_THROW(StateSpec::parse("classical-joint:nx=2,ny=2,table=0.5;0;0;0.6").build(), ValidationError);
}

TEST(StateFile, JsonRoundTrip) {
  const auto rho = random_density(3, {2, 3}, {"X", "Y"});
  const auto path = scratch("state.json");
  write_text_file(path, state_to_json(rho).dump());
  const auto back = read_state_file(path);
  EXPECT_EQ(back.labels(), rho.labels());
  EXPECT_EQ(back.matrix(), rho.matrix());
  EXPECT_EQ(StateSpec::parse(path.string()).build().matrix(), rho.matrix());
}

TEST(Export, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 0.8610730554744643, 1e-300, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Export, CsvReimportIsBitExact) {
  SolverConfig cfg;
  const auto p = bsc_joint(0.1);
  const auto c = classical_ib_curve(p, 4, linear_grid(0.0, p.mutual_information(), 7), cfg);
  const auto rows = parse_csv_numbers(curve_to_csv(c));
  ASSERT_EQ(rows.size(), c.points.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], c.points[i].abscissa);
    EXPECT_EQ(rows[i][1], c.points[i].value);
  }
}

TEST(Export, JsonWitnessReplays) {
  SolverConfig cfg;
  cfg.restarts = 3;
  const auto rho = rho3(0.4);
  const auto c = quantum_ib_curve(rho, cfg, linear_grid(0.0, mutual_information(rho, {"X"}, {"Y"}), 4));
  const auto j = nlohmann::json::parse(curve_to_json(c).dump());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& w = j["points"][i]["witness"];
    QuantumWitness q;
    q.lambda = w["lambda"].get<double>();
    q.d_in = w["d_in"].get<int>();
    q.d_w = w["d_w"].get<int>();
    q.d_v = w["d_v"].get<int>();
    auto params = [](const nlohmann::json& b) {
      const auto v = b["params"].get<std::vector<double>>();
      return RVector(Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    q.params0 = params(w["branches"][0]);
    if (w["branches"].size() > 1) q.params1 = params(w["branches"][1]);
    EXPECT_NEAR(replay_witness(q, rho).first, j["points"][i]["value"].get<double>(), 1e-9);
  }
}

TEST(Manifest, RoundTrip) {
  RunManifest m;
  m.command = "ib";
  m.config = {{"grid", 21}, {"state", "rho3:p=0.4"}};
  m.seed = 18446744073709551615ULL;
  m.version = kToolVersion;
  m.wall_time_seconds = 1.25;
  m.digests = {{"c.csv", sha256_hex("abc")}};
  EXPECT_EQ(RunManifest::from_json(nlohmann::json::parse(m.to_json().dump())), m);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, QuantumCurveWritesCsvManifestAndPlot) {
  const auto out = scratch("c.csv");
  const auto plot = scratch("c.svg");
  const auto r = run({"ib", "--state", "rho3:p=0.4", "--quantum", "--dw", "3", "--grid", "21", "--normalize",
                      "--restarts", "3", "--out", out.string(), "--plot", plot.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto text = read_text_file(out);
  EXPECT_EQ(parse_csv_numbers(text).size(), 21u);
  const auto manifest = RunManifest::from_json(nlohmann::json::parse(read_text_file(out.string() + ".manifest.json")));
  EXPECT_EQ(manifest.digests.at("c.csv"), sha256_hex(text));
  EXPECT_EQ(manifest.digests.at("c.svg"), sha256_hex(read_text_file(plot)));
  EXPECT_NE(read_text_file(plot).find("R\xCC\x84_q(a)"), std::string::npos);
}

TEST(Cli, ClassicalBscAgainstOracleColumn) {
  const auto r = run({"ib", "--state", "bsc:delta=0.1", "--classical", "--grid", "21"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv_numbers(r.out);
  ASSERT_EQ(rows.size(), 21u);
  for (const auto& row : rows) EXPECT_NEAR(row[1], row[4], 2e-3);
}

TEST(Cli, ByteIdenticalReruns) {
  const std::vector<std::string> args{"pf", "--state", "rho3:p=0.3", "--grid", "5", "--restarts", "2",
                                      "--seed", "11", "--format", "json"};
  setenv("BOTTLENECK_LAB_THREADS", "1", 1);
  const auto a = run(args);
  setenv("BOTTLENECK_LAB_THREADS", "2", 1);
  const auto b = run(args);
  unsetenv("BOTTLENECK_LAB_THREADS");
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"ib", "--no-such-flag"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"ib", "--state", "rho3:p=7"}).code, kExitValidation);
  EXPECT_EQ(run({"ib", "--grid", "abc"}).code, kExitValidation);
  EXPECT_EQ(run({"ib", "--classical", "--quantum"}).code, kExitValidation);
  EXPECT_EQ(run({"ib", "--state", "rho3:p=0.4", "--grid", "3", "--restarts", "1", "--out",
                 "/nonexistent-dir/x/c.csv"})
                .code,
            kExitValidation);
  EXPECT_EQ(run({"ib", "--state", "rho3:p=0.4", "--beta-grid", "log:1:0.5:3"}).code, kExitValidation);
  EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, kExitValidation);
  EXPECT_EQ(run({"ib", "--state", "classical-joint:nx=2,ny=2,table=0.25;0.25;0.25;0.25", "--normalize",
                 "--grid", "3", "--restarts", "1"})
                .code,
            kExitValidation);
  const auto s = run({"state", "--state", "rho3:p=0.4"});
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_NE(s.out.find("0.7219280948873623"), std::string::npos);
}

TEST(Cli, VerifySuites) {
  const auto r = run({"verify", "--suite", "core", "--seed", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, RateRegionAndDimStudy) {
  const auto rr = run({"rate-region", "--state", "rho3:p=0.4", "--grid", "4", "--restarts", "2"});
  ASSERT_EQ(rr.code, kExitOk) << rr.err;
  const auto rows = parse_csv_numbers(rr.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i][0], rows[i - 1][0]);
  const auto ds = run({"dim-study", "--state", "rho3:p=0.4", "--grid", "3", "--restarts", "1", "--dw-list", "2,3"});
  ASSERT_EQ(ds.code, kExitOk) << ds.err;
  EXPECT_EQ(parse_csv_numbers(ds.out).size(), 6u);
}
