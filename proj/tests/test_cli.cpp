// Copyright 2026 The locc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "locc/cli.hpp"

using locc::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = locc::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("locc_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, CertifyEvenJson) {
  const CliRun r = run({"oneway", "certify", "--family", "even", "--d", "4", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["report"]["conclusion"], "OneWayImpossible");
  EXPECT_EQ(j["report"]["top_block_image_dim"], 1);
  EXPECT_EQ(j["manifest"]["command"], "oneway certify");
  EXPECT_EQ(j["manifest"]["tool_version"], locc::cli::kToolVersion);
}

TEST(Cli, PptVerifyMod3) {
  const CliRun r = run({"ppt", "verify", "--family", "mod3", "--d", "5", "--k", "3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["report"]["ppt"]["pass"].get<bool>());
  EXPECT_NEAR(j["report"]["ppt"]["bound"].get<double>(), 1.0 / 15.0, 1e-15);
}

TEST(Cli, TwowayRunExact) {
  const CliRun r = run({"twoway", "run", "--family", "even", "--d", "4", "--exact", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["report"]["exact"]["success"].get<double>(), 1.0, 1e-9);
}

TEST(Cli, HumanOutputMentionsPass) {
  const CliRun r = run({"twoway", "run", "--family", "mod3", "--d", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, ExpectImpossibleFailsOnDegenerate) {
  const CliRun r = run({"oneway", "certify", "--family", "even", "--d", "4", "--omega", "0", "--gamma", "0",
                     "--allow-degenerate", "--expect-impossible"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Inconclusive"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"family", "check", "--d", "four"}).code, 2);
  const CliRun bad = run({"family", "check", "--family", "mod3", "--d", "6"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("SpecInvalid"), std::string::npos);
  EXPECT_EQ(run({"simulate", "--family", "even", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"oneway", "randomized", "--priors", "0.5,0.5"}).code, 2);
}

TEST(Cli, FamilyBuildAndCheck) {
  const CliRun b = run({"family", "build", "--family", "k", "--r", "2", "--json"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(json::parse(b.out)["report"]["unitaries"].size(), 4u);
  EXPECT_EQ(run({"family", "check", "--family", "lattice", "--lattice", "00,11,23"}).code, 0);
}

TEST(Cli, Prop1WithIsometryFile) {
  const auto path = temp_file("w.json");
  {
    std::ofstream f(path);
    f << json(locc::ComplexMatrix::identity(4)).dump();
  }
  const CliRun r = run({"oneway", "prop1", "--family", "even", "--d", "4", "--w", path.string()});
  EXPECT_EQ(r.code, 1);  // diag(V) ≠ 0
  std::filesystem::remove(path);
}

TEST(Cli, RandomizedError) {
  const CliRun r = run({"oneway", "randomized", "--family", "even", "--d", "4", "--priors", "0.5,0.4,0.1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["report"]["error"].get<double>(), 0.05, 1e-12);
}

TEST(Cli, CsvConfusion) {
  const CliRun r = run({"twoway", "run", "--family", "even", "--d", "6", "--csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("i,j,", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
}

TEST(Cli, SimulateIsDeterministic) {
  const std::vector<std::string> args = {"simulate", "--family", "even", "--d", "4", "--protocol", "randomized",
                                         "--trials", "3000", "--seed", "11", "--json"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> other = args;
  other.push_back("--workers");
  other.push_back("3");
  EXPECT_EQ(run(other).out, a.out);  // --workers is not part of the manifest
}

TEST(Cli, TolFromEnvironment) {
  ::setenv("LOCC_LAB_TOL", "1e-3", 1);
  const CliRun r = run({"ppt", "verify", "--family", "even", "--d", "4", "--json"});
  ::unsetenv("LOCC_LAB_TOL");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["manifest"]["tolerance"].get<double>(), 1e-3, 1e-18);
}

TEST(Cli, ReplayReproducesReport) {
  const auto first = temp_file("first.json");
  const auto second = temp_file("second.json");
  ASSERT_EQ(run({"simulate", "--family", "mod3", "--d", "5", "--protocol", "twoway", "--trials", "2000", "--seed",
                 "5", "--out", first.string()})
                .code,
            0);
  ASSERT_EQ(run({"replay", first.string(), "--out", second.string()}).code, 0);
  const json a = json::parse(slurp(first));
  const json b = json::parse(slurp(second));
  EXPECT_EQ(a["report"].dump(), b["report"].dump());
  EXPECT_EQ(a["manifest"]["options"], b["manifest"]["options"]);
  std::filesystem::remove(first);
  std::filesystem::remove(second);
}

TEST(Cli, LatticeSweep) {
  const CliRun r = run({"lattice", "sweep", "--json"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["report"]["perfect"], 560);
}

#ifdef LOCC_LAB_BINARY
TEST(Cli, BinaryExitCodes) {
  const std::string bin = LOCC_LAB_BINARY;
  EXPECT_EQ(std::system((bin + " oneway certify --family even --d 4 > /dev/null").c_str()), 0);
  const int bad = std::system((bin + " ppt verify --d x > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), 2);
}
#endif
