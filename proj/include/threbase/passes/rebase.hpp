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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "threbase/core/circuit.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/gates.hpp"
#include "threbase/passes/report.hpp"
#include "threbase/sk/net.hpp"
#include "threbase/sk/solovay_kitaev.hpp"

namespace threbase::passes {

/**
 * Exact ancilla-free expansion of a named gate over {H, CS}, if one exists.
 *
 *   CZ[a,b]    -> CS, CS
 *   CNOT[a,b]  -> H(b), CS, CS, H(b)
 *   CSDG[a,b]  -> CS, CS, CS
 *   CCX[a,b,c] -> H(c), CCZ(a,b,c), H(c) with CCZ = CS(b,c) CNOT(a,b) CS†(b,c) CNOT(a,b) CS(a,c)
 *
 * X, Z, S and SDG have no such expansion and return nullopt.
 */
inline std::optional<std::vector<Gate>> rebase_exact(const Gate& g) {
  using namespace gates;
  const auto& q = g.qubits();
  switch (g.kind()) {
    case GateKind::H:
    case GateKind::CS: return std::vector<Gate>{g};
    case GateKind::CZ: return std::vector<Gate>{CS(q[0], q[1]), CS(q[0], q[1])};
    case GateKind::CNOT: return std::vector<Gate>{H(q[1]), CS(q[0], q[1]), CS(q[0], q[1]), H(q[1])};
    case GateKind::CSDG: return std::vector<Gate>{CS(q[0], q[1]), CS(q[0], q[1]), CS(q[0], q[1])};
    case GateKind::CCX: {
      const std::size_t a = q[0], b = q[1], c = q[2];
      std::vector<Gate> out{H(c), CS(b, c)};
      auto cnot = [&] {
        out.insert(out.end(), {H(b), CS(a, b), CS(a, b), H(b)});
      };
      cnot();
      out.insert(out.end(), {CS(b, c), CS(b, c), CS(b, c)});
      cnot();
      out.insert(out.end(), {CS(a, c), H(c)});
      return out;
    }
    default: return std::nullopt;
  }
}

/// Accuracy budget not met for one gate; carries the best distance achieved.
class RebaseBudgetError : public Error {
 public:
  RebaseBudgetError(const std::string& what, std::size_t gate_index, double best)
      : Error(what), gate_index_(gate_index), best_(best) {}
  std::size_t gate_index() const { return gate_index_; }
  double best_distance() const { return best_; }

 private:
  std::size_t gate_index_;
  double best_;
};

/**
 * Rebases a circuit onto {H, CS}. Gates with an exact identity are expanded
 * in place; the rest are approximated by searching a two-qubit Kitaev-set net,
 * each against an equal share eps/m of the budget. Single-qubit targets are
 * searched as U⊗I on the operand and a neighbouring qubit. The report's
 * error bound is the sum of achieved per-gate distances.
 */
inline PassResult rebase_circuit(const Circuit& c, const sk::Net& kitaev_net, double eps) {
  if (!(eps > 0.0)) throw ValidationError("rebase_circuit: eps must be positive");

  std::vector<std::optional<std::vector<Gate>>> exact;
  exact.reserve(c.size());
  std::size_t approximated = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    if (g.is_generic() && g.arity() > 2) {
      throw ValidationError("rebase_circuit: gate #" + std::to_string(i) + " is a GENERIC gate on more than 2 qubits");
    }
    exact.push_back(g.is_generic() ? std::nullopt : rebase_exact(g));
    if (!exact.back()) ++approximated;
  }

  if (approximated > 0) {
    if (kitaev_net.gateset().name() != "kitaev" || kitaev_net.gateset().fingerprint() != sk::kitaev_set().fingerprint()) {
      throw ValidationError("rebase_circuit: approximation requires a net over the Kitaev set");
    }
    if (c.n_qubits() < 2) throw ValidationError("rebase_circuit: approximating gates needs at least 2 qubits");
  }
  const double budget = approximated > 0 ? eps / static_cast<double>(approximated) : eps;

  Circuit out(c.n_qubits());
  double error = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (exact[i]) {
      for (auto& g : *exact[i]) out.append(std::move(g));
      continue;
    }
    const Gate& g = c.gates()[i];
    std::vector<std::size_t> operands = g.qubits();
    CMatrix target = g.matrix();
    if (operands.size() == 1) {
      const std::size_t q = operands[0];
      operands.push_back(q + 1 < c.n_qubits() ? q + 1 : q - 1);
      target = kron(target, CMatrix::identity(2));
    }
    const sk::Approximation a = sk::net_search_2q(target, kitaev_net);
    if (a.achieved > budget) {
      throw RebaseBudgetError("rebase_circuit: gate #" + std::to_string(i) + " (" + std::string(g.name()) +
                                  ") best distance " + std::to_string(a.achieved) + " exceeds per-gate budget " +
                                  std::to_string(budget),
                              i, a.achieved);
    }
    error += a.achieved;
    for (auto& e : kitaev_net.gateset().instantiate(a.seq, operands)) out.append(std::move(e));
  }
  TranspileReport report = make_report("rebase", c, out, error);
  return {std::move(out), report};
}

}  // namespace threbase::passes
