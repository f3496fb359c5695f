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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "threbase/threbase.hpp"

using namespace threbase;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.passed) ++failures;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  std::cout << (o.passed ? "PASS" : "FAIL") << "  [" << id << "] " << title << "  " << o.detail << "  (" << buf
            << ")" << std::endl;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = std::string(THREBASE_CLI) + " " + args + " > " + stdout_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::vector<Circuit>& corpus() {
  static const std::vector<Circuit> c = testing::kitaev_corpus(2026, 100);
  return c;
}

}  // namespace

int main() {
  std::cout << std::unitbuf;

  criterion(1, "realified controlled-S acts as doubly controlled XZ on the 8 basis states", [] {
    const CMatrix r = passes::realify_matrix(gate_matrix(GateKind::CS));
    double dev = 0.0;
    for (std::size_t in = 0; in < 8; ++in) {
      std::vector<double> expected(8, 0.0);
      if (in == 0b110) expected[0b111] = 1.0;
      else if (in == 0b111) expected[0b110] = -1.0;
      else expected[in] = 1.0;
      for (std::size_t out = 0; out < 8; ++out) dev = std::max(dev, std::abs(r(out, in) - expected[out]));
    }
    return Outcome{dev <= 1e-12, "max_dev=" + num(dev) + " tol=1e-12"};
  });

  criterion(2, "H CCX H CCX realizes the realified controlled-S; XZ = XHXH", [] {
    const Circuit four(3, {gates::H(2), gates::CCX(0, 1, 2), gates::H(2), gates::CCX(0, 1, 2)});
    const double d = dist(circuit_unitary(four), passes::realify_matrix(gate_matrix(GateKind::CS)));
    const CMatrix x = gate_matrix(GateKind::X), h = gate_matrix(GateKind::H), z = gate_matrix(GateKind::Z);
    const double alg = max_abs_diff(x * z, x * h * x * h);
    return Outcome{d <= 1e-12 && alg <= 1e-14, "dist=" + num(d) + " tol=1e-12, |XZ-XHXH|=" + num(alg) + " tol=1e-14"};
  });

  criterion(3, "realify overhead: n+1 qubits, <= 4t gates, check_realified at 1e-10 (100 circuits)", [] {
    std::size_t bad_shape = 0, bad_check = 0;
    double worst = 0.0;
    for (const Circuit& c : corpus()) {
      const auto r = passes::realify_circuit(c);
      if (r.circuit.n_qubits() != c.n_qubits() + 1 || r.circuit.size() > 4 * c.size() ||
          !verify::overhead_stats(r.report).passed) {
        ++bad_shape;
      }
      const auto rep = verify::check_realified(c, r.circuit, 1e-10);
      worst = std::max(worst, rep.max_deviation);
      if (!rep.passed) ++bad_check;
    }
    return Outcome{bad_shape == 0 && bad_check == 0, "shape_violations=" + std::to_string(bad_shape) +
                                                         " check_failures=" + std::to_string(bad_check) +
                                                         " max_dev=" + num(worst)};
  });

  criterion(4, "measurement statistics preserved at 1e-10 (100 circuits)", [] {
    std::size_t failed = 0;
    double worst = 0.0;
    for (const Circuit& c : corpus()) {
      const auto rep = verify::check_measurement_stats(c, passes::realify_circuit(c).circuit, 1e-10);
      worst = std::max(worst, rep.max_deviation);
      if (!rep.passed) ++failed;
    }
    return Outcome{failed == 0, "failures=" + std::to_string(failed) + " max_dev=" + num(worst)};
  });

  criterion(5, "realified unitaries are real: max |Im| <= 1e-12 (100 circuits)", [] {
    double worst = 0.0;
    for (const Circuit& c : corpus()) worst = std::max(worst, max_imag(circuit_unitary(passes::realify_circuit(c).circuit)));
    return Outcome{worst <= 1e-12, "max_imag=" + num(worst)};
  });

  criterion(6, "exact rebase table: CZ -> CS^2, CNOT -> H CS^2 H", [] {
    const auto cz = passes::rebase_exact(gates::CZ(0, 1));
    const auto cx = passes::rebase_exact(gates::CNOT(0, 1));
    const bool shapes = cz && cx && *cz == std::vector<Gate>{gates::CS(0, 1), gates::CS(0, 1)} &&
                        *cx == std::vector<Gate>{gates::H(1), gates::CS(0, 1), gates::CS(0, 1), gates::H(1)};
    const double d1 = dist(circuit_unitary(Circuit(2, *cz)), gate_matrix(GateKind::CZ));
    const double d2 = dist(circuit_unitary(Circuit(2, *cx)), gate_matrix(GateKind::CNOT));
    return Outcome{shapes && d1 <= 1e-12 && d2 <= 1e-12,
                   "dist(CZ)=" + num(d1) + " dist(CNOT)=" + num(d2) + " tol=1e-12"};
  });

  criterion(7, "SK scaling on {H, T, Tdg}: monotone in depth, d_{k+1} <= c d_k^{3/2} with c < 10", [] {
    constexpr std::size_t kLen = 22, kTargets = 50, kDepth = 4;
    constexpr std::uint64_t kSeed = 2026;
    const fs::path cache = fs::temp_directory_path() / ("th_rebase_acceptance_demo_net_" + std::to_string(::getpid()));
    {
      const sk::Net built = sk::build_net(sk::demo_set(), kLen);
      std::ofstream(cache, std::ios::binary) << io::emit_net(built);
    }
    const sk::Net net = io::parse_net(read_file(cache));
    fs::remove(cache);

    std::mt19937_64 probe(kSeed + 1);
    double radius = 0.0;
    for (int i = 0; i < 2000; ++i) radius = std::max(radius, sk::nearest(net, haar_unitary(2, probe)).distance);

    std::mt19937_64 rng(kSeed);
    std::size_t nonmono = 0, used = 0;
    double c_fit = 0.0;
    std::vector<double> level_max(kDepth + 1, 0.0);
    for (std::size_t t = 0; t < kTargets; ++t) {
      const CMatrix u = haar_unitary(2, rng);
      std::vector<double> d;
      for (std::size_t k = 0; k <= kDepth; ++k) d.push_back(sk::sk_refine(u, net, k).achieved);
      for (std::size_t k = 0; k <= kDepth; ++k) level_max[k] = std::max(level_max[k], d[k]);
      if (d[0] > radius) continue;
      ++used;
      for (std::size_t k = 0; k < kDepth; ++k) {
        if (d[k + 1] > d[k]) ++nonmono;
        if (d[k] > 0.0) c_fit = std::max(c_fit, d[k + 1] / std::pow(d[k], 1.5));
      }
    }
    double c_level = 0.0;
    for (std::size_t k = 0; k < kDepth; ++k) c_level = std::max(c_level, level_max[k + 1] / std::pow(level_max[k], 1.5));
    return Outcome{nonmono == 0 && used >= kTargets && c_fit < 10.0,
                   "net=" + std::to_string(net.size()) + " radius=" + num(radius) + " targets=" + std::to_string(used) +
                       " nonmonotone=" + std::to_string(nonmono) + " c_fit=" + num(c_fit) +
                       " (worst-level c=" + num(c_level) + ")"};
  });

  criterion(8, "Kitaev two-qubit net: CZ, CS^dagger at dist 0 for L<=3; nearest non-increasing over L=4,6,8", [] {
    const sk::Net small = sk::build_net(sk::kitaev_set(), 3);
    const double dcz = sk::nearest(small, gate_matrix(GateKind::CZ)).distance;
    const double dcsdg = sk::nearest(small, gate_matrix(GateKind::CSDG)).distance;
    const sk::Net n4 = sk::build_net(sk::kitaev_set(), 4), n6 = sk::build_net(sk::kitaev_set(), 6),
                  n8 = sk::build_net(sk::kitaev_set(), 8);
    std::mt19937_64 rng(2026);
    std::size_t violations = 0;
    double mean8 = 0.0;
    for (int t = 0; t < 20; ++t) {
      const CMatrix u = haar_unitary(4, rng);
      const double d4 = sk::net_search_2q(u, n4).achieved, d6 = sk::net_search_2q(u, n6).achieved,
                   d8 = sk::net_search_2q(u, n8).achieved;
      if (d6 > d4 || d8 > d6) ++violations;
      mean8 += d8 / 20.0;
    }
    return Outcome{dcz <= 1e-12 && dcsdg <= 1e-12 && violations == 0,
                   "dist(CZ)=" + num(dcz) + " dist(CSdg)=" + num(dcsdg) + " violations=" + std::to_string(violations) +
                       " mean_L8=" + num(mean8)};
  });

  criterion(9, "simulator matches circuit_unitary columns at 1e-10", [] {
    std::vector<Circuit> all = corpus();
    std::mt19937_64 rng(2027);
    for (int i = 0; i < 100; ++i) all.push_back(testing::random_circuit(rng, 1 + i % 5, 30));
    double worst = 0.0;
    for (const Circuit& c : all) {
      const CMatrix u = circuit_unitary(c);
      for (std::size_t i = 0; i < u.dim(); ++i) {
        const verify::StateVector s = verify::run(c, i);
        for (std::size_t r = 0; r < u.dim(); ++r) worst = std::max(worst, std::abs(s[r] - u(r, i)));
      }
    }
    return Outcome{worst <= 1e-10, "circuits=" + std::to_string(all.size()) + " max_dev=" + num(worst)};
  });

  criterion(10, "repeated transpile / net build runs are byte-identical", [] {
    const fs::path dir = fs::temp_directory_path() / ("th_rebase_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const Circuit c(3, {gates::H(0), gates::CNOT(0, 1), gates::CS(1, 2), gates::X(2), gates::CZ(2, 0), gates::CCX(0, 1, 2)});
    std::ofstream(dir / "in.json") << io::emit_circuit(c);
    std::ofstream(dir / "kit.json") << io::emit_circuit(testing::kitaev_corpus(7, 1)[0]);
    const std::string in = (dir / "in.json").string(), kit = (dir / "kit.json").string();
    const std::vector<std::string> cmds{
        "transpile " + in + " --to th --eps 10 -o " + (dir / "OUT").string(),
        "transpile " + in + " --to kitaev --eps 10 -o " + (dir / "OUT").string(),
        "transpile " + kit + " --to th -o " + (dir / "OUT").string(),
        "net build --set kitaev --max-len 6 -o " + (dir / "OUT").string(),
        "net build --set demo --max-len 12 -o " + (dir / "OUT").string(),
    };
    std::size_t mismatches = 0, errors = 0;
    for (const std::string& cmd : cmds) {
      std::string outputs[2], reports[2];
      for (int run = 0; run < 2; ++run) {
        if (shell(cmd, dir / "report") != 0) ++errors;
        outputs[run] = read_file(dir / "OUT");
        reports[run] = read_file(dir / "report");
      }
      if (outputs[0] != outputs[1] || reports[0] != reports[1] || outputs[0].empty()) ++mismatches;
    }
    fs::remove_all(dir);
    return Outcome{mismatches == 0 && errors == 0, "commands=" + std::to_string(cmds.size()) +
                                                       " mismatches=" + std::to_string(mismatches) +
                                                       " nonzero_exits=" + std::to_string(errors)};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << std::endl;
  return failures;
}
