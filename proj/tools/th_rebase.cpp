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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "threbase/threbase.hpp"

using namespace threbase;
using ojson = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kCap = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

Circuit load_circuit(const std::string& path) {
  try {
    return io::parse_circuit(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::size_t max_qubits() {
  const char* env = std::getenv("TH_REBASE_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return kDefaultMaxQubits;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 30) throw ValidationError("TH_REBASE_MAX_QUBITS must be an integer in 1..30");
  return v;
}

/// nlohmann prints doubles with the shortest round-trip form, which is stable.
ojson report_json(const passes::TranspileReport& r) {
  return {{"pass", r.pass},
          {"input_gates", r.input_gates},
          {"output_gates", r.output_gates},
          {"input_qubits", r.input_qubits},
          {"output_qubits", r.output_qubits},
          {"input_depth", r.input_depth},
          {"output_depth", r.output_depth},
          {"error_bound", r.error_bound}};
}

void print(const ojson& doc, std::ostream& os = std::cout) { os << doc.dump(2) << "\n"; }

sk::Net load_or_build_net(const std::string& path, const std::string& set, std::size_t max_len, double dedupe) {
  if (!path.empty()) {
    sk::Net net = io::parse_net(read_file(path));
    if (net.gateset().name() != set) {
      throw ValidationError("net cache '" + path + "' is over '" + net.gateset().name() + "', expected '" + set + "'");
    }
    return net;
  }
  return sk::build_net(sk::builtin_gateset(set), max_len, dedupe);
}

// transpile ---------------------------------------------------------------

struct TranspileOpts {
  std::string input, output, to = "th", net;
  double eps = 1e-2;
  std::size_t max_len = 8;
};

bool only_kinds(const Circuit& c, std::initializer_list<GateKind> kinds) {
  for (const auto& g : c.gates())
    if (std::find(kinds.begin(), kinds.end(), g.kind()) == kinds.end()) return false;
  return true;
}

int run_transpile(const TranspileOpts& o) {
  const Circuit in = load_circuit(o.input);
  std::optional<sk::Net> net;
  auto kitaev_net = [&]() -> const sk::Net& {
    if (!net) net = load_or_build_net(o.net, "kitaev", o.max_len, sk::kDefaultDedupeTol);
    return *net;
  };
  auto rebase = [&](const Circuit& c) {
    bool exact = true;
    for (const auto& g : c.gates()) exact = exact && !g.is_generic() && passes::rebase_exact(g).has_value();
    static const sk::Net empty_net = sk::build_net(sk::kitaev_set(), 1);
    return passes::rebase_circuit(c, exact ? empty_net : kitaev_net(), o.eps);
  };

  passes::PassResult result;
  ojson doc;
  if (o.to == "kitaev") {
    result = rebase(in);
  } else if (only_kinds(in, {GateKind::H, GateKind::CCX})) {
    result = {in, passes::make_report("identity", in, in, 0.0)};
  } else {
    const bool kitaev_input = only_kinds(in, {GateKind::H, GateKind::CS});
    const passes::PassResult rebased = kitaev_input ? passes::PassResult{in, passes::make_report("identity", in, in, 0.0)}
                                                    : rebase(in);
    const passes::PassResult realified = passes::realify_circuit(rebased.circuit);
    result = {realified.circuit, kitaev_input ? realified.report : passes::chain(rebased.report, realified.report)};
    const auto overhead = verify::overhead_stats(realified.report);
    doc["realify_overhead"] = {{"gates_within_4t", overhead.gate_bound}, {"one_ancilla", overhead.one_ancilla}};
  }
  ojson report = report_json(result.report);
  for (auto& [k, v] : doc.items()) report[k] = v;
  report["target"] = o.to;

  const std::string text = io::emit_circuit(result.circuit);
  if (o.output.empty()) {
    std::cout << text;
    print(report, std::cerr);
  } else {
    write_file(o.output, text);
    print(report);
  }
  return kOk;
}

// verify ------------------------------------------------------------------

int run_verify(const std::string& a, const std::string& b, const std::string& mode, double tol) {
  const Circuit ca = load_circuit(a), cb = load_circuit(b);
  const std::size_t cap = max_qubits();
  verify::EquivalenceReport r;
  if (mode == "exact") r = verify::check_exact(ca, cb, tol, cap);
  else if (mode == "realified") r = verify::check_realified(ca, cb, tol, cap);
  else r = verify::check_measurement_stats(ca, cb, tol, cap);
  const std::size_t worst = r.worst_basis();
  const std::size_t n = ca.n_qubits();
  std::string bits(n, '0');
  for (std::size_t q = 0; q < n; ++q)
    if ((worst >> bit_of(q, n)) & 1) bits[q] = '1';
  print({{"mode", std::string(verify::check_kind_name(r.kind))},
         {"passed", r.passed},
         {"max_deviation", r.max_deviation},
         {"tolerance", r.tolerance},
         {"worst_basis", bits}});
  return r.passed ? kOk : kFailed;
}

// net ---------------------------------------------------------------------

ojson net_summary(const sk::Net& net) {
  return {{"gateset", net.gateset().name()},
          {"fingerprint", net.gateset().fingerprint()},
          {"max_len", net.max_length()},
          {"dedupe_tol", net.dedupe_tol()},
          {"entries", net.size()},
          {"count_by_length", net.count_by_length()}};
}

int run_net_build(const std::string& set, std::size_t max_len, double dedupe, const std::string& output) {
  const sk::Net net = sk::build_net(sk::builtin_gateset(set), max_len, dedupe);
  write_file(output, io::emit_net(net));
  print(net_summary(net));
  return kOk;
}

CMatrix named_target(const std::string& name, std::size_t dim) {
  const auto kind = gate_kind_from_name(name);
  if (!kind || *kind == GateKind::Generic) throw ValidationError("unknown gate name '" + name + "'");
  CMatrix m = gate_matrix(*kind);
  if (m.dim() == dim) return m;
  if (m.dim() * 2 == dim) return kron(m, CMatrix::identity(2));
  throw ValidationError(name + " does not fit a " + std::to_string(dim) + "-dimensional net");
}

int run_net_inspect(const std::string& path, const std::string& nearest_name) {
  const sk::Net net = io::parse_net(read_file(path));
  ojson doc = net_summary(net);
  if (!nearest_name.empty()) {
    const sk::NetMatch m = sk::nearest(net, named_target(nearest_name, net.dim()));
    doc["nearest"] = {{"target", nearest_name},
                      {"seq", net.gateset().labels(net.entries()[m.index].seq)},
                      {"distance", m.distance}};
  }
  print(doc);
  return kOk;
}

// simulate ----------------------------------------------------------------

int run_simulate(const std::string& path, const std::string& bits) {
  const Circuit c = load_circuit(path);
  if (bits.size() != c.n_qubits()) {
    throw ValidationError("--input needs " + std::to_string(c.n_qubits()) + " bits, got " + std::to_string(bits.size()));
  }
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ValidationError("--input must be a bitstring");
    index = (index << 1) | static_cast<std::size_t>(ch == '1');
  }
  const verify::StateVector s = verify::run(c, index, max_qubits());
  std::cout << "{\n  \"qubits\": " << c.n_qubits() << ",\n  \"input\": \"" << bits << "\",\n  \"amplitudes\": [";
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::cout << (i ? ", " : "") << "[" << io::format_double(s[i].real()) << ", " << io::format_double(s[i].imag())
              << "]";
  }
  std::cout << "]\n}\n";
  return kOk;
}

// bench -------------------------------------------------------------------

struct BenchOpts {
  bool sk_scaling = false;
  std::size_t targets = 50, max_depth = 4, max_len = 14;
  std::uint64_t seed = 2026;
  std::string net;
  double dedupe = sk::kDefaultDedupeTol;
};

int run_bench(const BenchOpts& o) {
  if (!o.sk_scaling) throw ValidationError("bench: pass --sk-scaling");
  const sk::Net net = load_or_build_net(o.net, "demo", o.max_len, o.dedupe);
  std::mt19937_64 rng(o.seed);
  std::cout << "target,depth,achieved,length\n";
  for (std::size_t t = 0; t < o.targets; ++t) {
    const CMatrix u = haar_unitary(2, rng);
    for (std::size_t d = 0; d <= o.max_depth; ++d) {
      const sk::Approximation a = sk::sk_refine(u, net, d);
      std::cout << t << "," << d << "," << io::format_double(a.achieved) << "," << a.seq.size() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rebase circuits onto the Toffoli+Hadamard and {H, controlled-S} gate sets"};
  app.require_subcommand(1);

  TranspileOpts topt;
  auto* transpile = app.add_subcommand("transpile", "Rebase a circuit onto {H, CS} or {H, CCX}");
  transpile->add_option("input", topt.input, "Circuit file")->required();
  transpile->add_option("--to", topt.to, "Target gate set")->check(CLI::IsMember({"th", "kitaev"}));
  transpile->add_option("--eps", topt.eps, "Total error budget for approximated gates")->check(CLI::PositiveNumber);
  transpile->add_option("--net", topt.net, "Kitaev net cache file");
  transpile->add_option("--max-len", topt.max_len, "Word length of the Kitaev net built when no cache is given")
      ->check(CLI::Range(1, 16));
  transpile->add_option("-o,--output", topt.output, "Output circuit file (default stdout)");

  std::string va, vb, vmode = "exact";
  double vtol = verify::kEquivalenceTol;
  auto* verify_cmd = app.add_subcommand("verify", "Compare two circuits");
  verify_cmd->add_option("a", va, "Reference circuit")->required();
  verify_cmd->add_option("b", vb, "Candidate circuit")->required();
  verify_cmd->add_option("--mode", vmode, "Comparison")->check(CLI::IsMember({"exact", "realified", "stats"}));
  verify_cmd->add_option("--tol", vtol, "Tolerance")->check(CLI::NonNegativeNumber);

  auto* net_cmd = app.add_subcommand("net", "Build or inspect net caches");
  net_cmd->require_subcommand(1);
  std::string nset = "kitaev", nout, nfile, nnearest;
  std::size_t nlen = 8;
  double ndedupe = sk::kDefaultDedupeTol;
  auto* build = net_cmd->add_subcommand("build", "Build a net and write its cache");
  build->add_option("--set", nset, "Gate set")->check(CLI::IsMember(sk::builtin_gateset_names()));
  build->add_option("--max-len", nlen, "Maximum word length")->check(CLI::Range(1, 64));
  build->add_option("--dedupe", ndedupe, "Dedupe tolerance")->check(CLI::PositiveNumber);
  build->add_option("-o,--output", nout, "Cache file")->required();
  auto* inspect = net_cmd->add_subcommand("inspect", "Summarize a net cache");
  inspect->add_option("file", nfile, "Cache file")->required();
  inspect->add_option("--nearest", nnearest, "Look up the entry nearest to a named gate");

  std::string sfile, sbits;
  auto* simulate = app.add_subcommand("simulate", "Print the output state for a basis input");
  simulate->add_option("file", sfile, "Circuit file")->required();
  simulate->add_option("--input", sbits, "Input bitstring, qubit 0 first")->required();

  BenchOpts bopt;
  auto* bench = app.add_subcommand("bench", "Solovay-Kitaev scaling table (CSV)");
  bench->add_flag("--sk-scaling", bopt.sk_scaling, "Run the depth sweep");
  bench->add_option("--targets", bopt.targets, "Number of Haar-random targets");
  bench->add_option("--max-depth", bopt.max_depth, "Deepest recursion level")->check(CLI::Range(0, 8));
  bench->add_option("--seed", bopt.seed, "RNG seed");
  bench->add_option("--max-len", bopt.max_len, "Word length of the demo net")->check(CLI::Range(1, 30));
  bench->add_option("--dedupe", bopt.dedupe, "Dedupe tolerance")->check(CLI::PositiveNumber);
  bench->add_option("--net", bopt.net, "Demo net cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*transpile) return run_transpile(topt);
    if (*verify_cmd) return run_verify(va, vb, vmode, vtol);
    if (*build) return run_net_build(nset, nlen, ndedupe, nout);
    if (*inspect) return run_net_inspect(nfile, nnearest);
    if (*simulate) return run_simulate(sfile, sbits);
    if (*bench) return run_bench(bopt);
  } catch (const passes::RebaseBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    print({{"error", "budget"}, {"gate_index", e.gate_index()}, {"best_distance", e.best_distance()}}, std::cerr);
    return kFailed;
  } catch (const sk::SkBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
