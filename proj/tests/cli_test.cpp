// Copyright 2026 The th-rebase Authors
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

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "threbase/threbase.hpp"

namespace threbase {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(THREBASE_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("th_rebase_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const Circuit& c) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << io::emit_circuit(c);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kData = THREBASE_TEST_DATA;

TEST_F(Cli, SimulateHadamard) {
  const Result r = cli("simulate " + kData + "/h.json --input 0");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["amplitudes"][0][0].get<double>(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(doc["amplitudes"][1][0].get<double>(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(cli("simulate " + kData + "/h.json --input 01").code, 2);
}

TEST_F(Cli, TranspileKitaevToTh) {
  const Circuit c(3, {gates::H(0), gates::CS(0, 1), gates::CS(1, 2), gates::H(2), gates::CS(2, 0)});
  const std::string in = write("in.json", c), out = path("out.json");
  const Result r = cli("transpile " + in + " --to th -o " + out);
  ASSERT_EQ(r.code, 0);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["output_qubits"], 4);
  EXPECT_LE(report["output_gates"].get<std::size_t>(), 4 * c.size());
  EXPECT_TRUE(report["realify_overhead"]["gates_within_4t"].get<bool>());
  const Circuit th = io::parse_circuit(read_file(out));
  for (const auto& g : th.gates()) EXPECT_TRUE(g.kind() == GateKind::H || g.kind() == GateKind::CCX);
  EXPECT_EQ(cli("verify " + in + " " + out + " --mode realified").code, 0);
  EXPECT_EQ(cli("verify " + in + " " + out + " --mode stats").code, 0);
}

TEST_F(Cli, TranspileThInputUnchanged) {
  const Circuit c(3, {gates::H(0), gates::CCX(0, 1, 2), gates::H(1)});
  const std::string in = write("in.json", c), out = path("out.json");
  ASSERT_EQ(cli("transpile " + in + " --to th -o " + out).code, 0);
  EXPECT_EQ(read_file(out), read_file(in));
}

TEST_F(Cli, TranspileExactTableHasZeroError) {
  const Circuit c(2, {gates::CZ(0, 1), gates::CNOT(1, 0)});
  const std::string in = write("in.json", c), out = path("out.json");
  const Result r = cli("transpile " + in + " --to kitaev -o " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["error_bound"].get<double>(), 0.0);
  EXPECT_EQ(cli("verify " + in + " " + out).code, 0);
}

TEST_F(Cli, TranspileBudgetFailureExitsOne) {
  const std::string in = write("in.json", Circuit(2, {gates::X(0)}));
  EXPECT_EQ(cli("transpile " + in + " --to kitaev --max-len 4 --eps 1e-3 -o " + path("out.json")).code, 1);
}

TEST_F(Cli, TranspileUsesNetCache) {
  const std::string cache = path("net.json");
  ASSERT_EQ(cli("net build --set kitaev --max-len 4 -o " + cache).code, 0);
  const std::string in = write("in.json", Circuit(2, {Gate::generic(CMatrix::diagonal({1, 1, 1, cplx(0, 1)}), {1, 0})}));
  const std::string out = path("out.json");
  ASSERT_EQ(cli("transpile " + in + " --to kitaev --net " + cache + " -o " + out).code, 0);
  EXPECT_EQ(io::parse_circuit(read_file(out)).gates(), (std::vector<Gate>{gates::CS(1, 0)}));

  const std::string demo = path("demo.json");
  ASSERT_EQ(cli("net build --set demo --max-len 2 -o " + demo).code, 0);
  EXPECT_EQ(cli("transpile " + in + " --to kitaev --net " + demo + " -o " + out).code, 2);
}

TEST_F(Cli, VerifyExitCodes) {
  const std::string h = write("h.json", Circuit(1, {gates::H(0)}));
  const std::string x = write("x.json", Circuit(1, {gates::X(0)}));
  const std::string hzh = write("hzh.json", Circuit(1, {gates::H(0), gates::Z(0), gates::H(0)}));
  EXPECT_EQ(cli("verify " + x + " " + hzh + " --mode exact").code, 0);
  const Result r = cli("verify " + h + " " + x + " --mode exact");
  EXPECT_EQ(r.code, 1);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["max_deviation"].get<double>(), std::sqrt(2 - std::sqrt(2.0)), 1e-9);
  EXPECT_EQ(cli("verify " + h + " " + x + " --mode bogus").code, 2);
}

TEST_F(Cli, NetBuildAndInspect) {
  const std::string cache = path("net.json");
  const Result b = cli("net build --set kitaev --max-len 2 -o " + cache);
  ASSERT_EQ(b.code, 0);
  const Result r = cli("net inspect " + cache + " --nearest CZ");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["nearest"]["distance"].get<double>(), 0.0);
  EXPECT_EQ(doc["nearest"]["seq"], nlohmann::json({"CS", "CS"}));

  std::string text = read_file(cache);
  const std::string fp = sk::kitaev_set().fingerprint();
  text.replace(text.find(fp), fp.size(), std::string(fp.size(), 'f'));
  std::ofstream(path("stale.json")) << text;
  EXPECT_EQ(cli("net inspect " + path("stale.json")).code, 2);
}

TEST_F(Cli, CapExceededExitsThree) {
  const std::string in = write("big.json", Circuit(5, {gates::H(0)}));
  EXPECT_EQ(cli("simulate " + in + " --input 00000").code, 0);
  const std::string cmd = "TH_REBASE_MAX_QUBITS=4 " + std::string(THREBASE_CLI) + " simulate " + in +
                          " --input 00000 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
  EXPECT_EQ(cli("net build --set kitaev --max-len 1 -o " + path("n.json") + " --dedupe -1").code, 2);
}

TEST_F(Cli, UsageAndFormatErrors) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("transpile " + path("missing.json")).code, 2);
  std::ofstream(path("bad.json")) << R"({"version":1,"qubits":1,"gates":[{"name":"CS","qubits":[0,0]}]})";
  EXPECT_EQ(cli("transpile " + path("bad.json") + " -o " + path("o.json")).code, 2);
}

TEST_F(Cli, BenchTableIsDeterministicAndMonotone) {
  const std::string args = "bench --sk-scaling --targets 3 --max-depth 2 --seed 5 --max-len 10";
  const Result a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "target,depth,achieved,length");
  int rows = 0;
  double prev = 0;
  while (std::getline(in, line)) {
    int target, depth;
    double achieved;
    std::size_t length;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%d,%lf,%zu", &target, &depth, &achieved, &length), 4) << line;
    if (depth > 0) {
      EXPECT_LE(achieved, prev);
    }
    prev = achieved;
    ++rows;
  }
  EXPECT_EQ(rows, 9);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const std::string in = write("in.json", Circuit(2, {gates::CZ(0, 1), gates::X(1), gates::CS(1, 0)}));
  const Result a = cli("transpile " + in + " --to th --eps 10 -o " + path("a.json"));
  const Result b = cli("transpile " + in + " --to th --eps 10 -o " + path("b.json"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  ASSERT_EQ(cli("net build --set demo --max-len 6 -o " + path("n1.json")).code, 0);
  ASSERT_EQ(cli("net build --set demo --max-len 6 -o " + path("n2.json")).code, 0);
  EXPECT_EQ(read_file(path("n1.json")), read_file(path("n2.json")));
}

}  // namespace
}  // namespace threbase
