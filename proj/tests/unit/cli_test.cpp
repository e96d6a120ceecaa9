// Copyright 2026 The unsharp Authors
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

#include "unsharp/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unsharp/continuous_inference.hpp"

using namespace unsharp;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(40.0), "40");
  const double awkward = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(awkward)), awkward);
  EXPECT_EQ(to_csv({{"a", "b"}, {{1.0, 0.25}}}), "a,b\n1,0.25\n");
}

TEST(FidelityCurve, NoMeasurementRowIsExact) {
  const CliRun r = run({"fidelity-curve", "--delta", "20", "--n-grid", "0", "--trials", "10", "--seed", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,mean_F,stderr,F_sat_closed_form\n0,0.5,0,0.5\n");
  EXPECT_EQ(r.err, "");
}

TEST(FidelityCurve, DeterministicAndWorkerInvariant) {
  const std::vector<std::string> base{"fidelity-curve", "--delta", "4", "--n-grid", "0,3,9", "--trials", "200",
                                      "--estimator", "both", "--seed", "17"};
  auto with_workers = [&](const std::string& workers) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--workers", workers});
    return run(args).out;
  };
  const std::string first = with_workers("1");
  EXPECT_EQ(first, with_workers("1"));
  EXPECT_EQ(first, with_workers("6"));
  EXPECT_NE(first, run({"fidelity-curve", "--delta", "4", "--n-grid", "0,3,9", "--trials", "200", "--estimator",
                        "both", "--seed", "18"})
                       .out);
}

TEST(FidelityCurve, CsvRoundTripsThroughParser) {
  const CliRun r = run({"fidelity-curve", "--delta", "3", "--n-grid", "0,5,20", "--trials", "300", "--seed", "2"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "mean_F", "stderr", "F_sat_closed_form"}));
  const MeasurementSettings settings(3.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 4u);
    const double n = std::stod(rows[i][0]);
    EXPECT_EQ(std::stod(rows[i][3]), mean_fidelity_closed_form(n, settings));
    const double mean = std::stod(rows[i][1]);
    EXPECT_GE(mean, 0.5 - 1e-12);
    EXPECT_LE(mean, 1.0);
  }
}

TEST(FidelityCurve, JsonEnvelope) {
  const CliRun r = run({"fidelity-curve", "--delta", "20", "--n-grid", "0,2", "--trials", "50", "--format", "json",
                        "--seed", "5", "--estimator", "both"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["meta"]["command"], "fidelity-curve");
  EXPECT_EQ(doc["meta"]["artifact_version"], kArtifactVersion);
  EXPECT_EQ(doc["meta"]["seed"], 5);
  EXPECT_EQ(doc["meta"]["flags"]["delta"], 20.0);
  EXPECT_EQ(doc["meta"]["columns"].size(), 6u);
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["n"], 0.0);
  for (const auto& column : doc["meta"]["columns"]) EXPECT_TRUE(doc["rows"][1].contains(column.get<std::string>()));
}

TEST(ContinuumCompare, FirstRowAndClosedFormColumn) {
  const CliRun r = run({"continuum-compare", "--delta", "30", "--n-max", "40", "--points", "5", "--trajectories",
                        "20", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "discrete_mean_purity", "sde_mean_purity", "drift_closed_form"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"0", "0.5", "0.5", "0.5"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::stod(rows[i][3]), drift_purity(std::stod(rows[i][0])));
  }
  EXPECT_EQ(std::stod(rows.back()[0]), time_from_steps(40, MeasurementSettings(30.0)));
}

TEST(ContinuumCompare, AdvisoryForSmallPrecision) {
  const CliRun r = run({"continuum-compare", "--delta", "5", "--n-max", "4", "--points", "2", "--trajectories", "4",
                        "--dt", "1e-3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Validate, QuickRunPasses) {
  const CliRun r = run({"validate", "--quick"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"check", "value", "threshold", "status"}));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].back(), "PASS") << rows[i][0];
}

TEST(Validate, InjectedFaultIsDetected) {
  const CliRun r = run({"validate", "--quick", "--inject-noise-scale", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("spectral-match"), std::string::npos);
  EXPECT_NE(r.err.find("spectral-match"), std::string::npos);
  EXPECT_NE(r.err.find("drift-dominance"), std::string::npos);
  EXPECT_NE(r.err.find("bloch-vs-matrix"), std::string::npos);
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"fidelity-curve", "--delta", "-1"}).code, 2);
  EXPECT_EQ(run({"fidelity-curve", "--n-grid", "3,x"}).code, 2);
  EXPECT_EQ(run({"fidelity-curve", "--strategy", "best"}).code, 2);
  EXPECT_EQ(run({"fidelity-curve", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"continuum-compare", "--dt", "0.5"}).code, 2);
  EXPECT_EQ(run({"continuum-compare", "--time-convention", "other"}).code, 2);
  EXPECT_EQ(run({"--version"}).out, std::string(kArtifactVersion) + "\n");
}

TEST(Cli, WritesOutputFile) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "unsharp_cli_test_out.csv";
  std::filesystem::remove(path);
  const CliRun r = run({"fidelity-curve", "--n-grid", "0", "--trials", "5", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  std::ifstream file(path);
  std::stringstream contents;
  contents << file.rdbuf();
  EXPECT_EQ(contents.str(), "n,mean_F,stderr,F_sat_closed_form\n0,0.5,0,0.5\n");
  std::filesystem::remove(path);
}
