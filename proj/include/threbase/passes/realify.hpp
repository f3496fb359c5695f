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
#include <string>
#include <vector>

#include "threbase/core/circuit.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/gates.hpp"
#include "threbase/core/matrix.hpp"
#include "threbase/passes/report.hpp"

namespace threbase::passes {

/**
 * Real version of a k-qubit unitary on k+1 qubits. The extra flag qubit is
 * the least significant bit and marks the imaginary component:
 *
 *   Ũ|i>|0> =  (Re U|i>)|0> + (Im U|i>)|1>
 *   Ũ|i>|1> = −(Im U|i>)|0> + (Re U|i>)|1>
 *
 * The map is multiplicative, so realifying gate by gate realifies the circuit.
 */
inline CMatrix realify_matrix(const CMatrix& u, double tol = kUnitaryTol) {
  if (!u.is_unitary(tol)) throw ValidationError("realify_matrix: input is not unitary");
  const std::size_t d = u.dim();
  CMatrix out(2 * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const double re = u(r, c).real(), im = u(r, c).imag();
      out(2 * r, 2 * c) = re;
      out(2 * r + 1, 2 * c) = im;
      out(2 * r, 2 * c + 1) = -im;
      out(2 * r + 1, 2 * c + 1) = re;
    }
  return out;
}

/// Expansion of one Kitaev-set gate over {H, CCX}.
struct RealifiedGate {
  Gate source;
  std::vector<Gate> emitted;
  std::size_t ancilla;
};

/**
 * H is real and passes through untouched. CS[a,b] becomes
 * H(anc), CCX(a,b,anc), H(anc), CCX(a,b,anc) in application order, whose
 * product CCX·H·CCX·H is the doubly controlled XZ on the ancilla.
 */
inline RealifiedGate realify_gate(const Gate& g, std::size_t ancilla) {
  for (std::size_t q : g.qubits())
    if (q == ancilla) throw ValidationError("realify_gate: ancilla collides with an operand");
  switch (g.kind()) {
    case GateKind::H: return {g, {g}, ancilla};
    case GateKind::CS: {
      const std::size_t a = g.qubits()[0], b = g.qubits()[1];
      return {g,
              {gates::H(ancilla), gates::CCX(a, b, ancilla), gates::H(ancilla), gates::CCX(a, b, ancilla)},
              ancilla};
    }
    default:
      throw ValidationError("realify_gate: " + std::string(g.name()) +
                            " is outside the {H, CS} alphabet; rebase first");
  }
}

/// Rewrites a circuit over {H, CS} into {H, CCX} with one shared ancilla at index n.
inline PassResult realify_circuit(const Circuit& c) {
  const std::size_t ancilla = c.n_qubits();
  Circuit out(c.n_qubits() + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    if (g.kind() != GateKind::H && g.kind() != GateKind::CS) {
      throw ValidationError("realify_circuit: gate #" + std::to_string(i) + " (" + std::string(g.name()) +
                            ") is outside the {H, CS} alphabet");
    }
    for (auto& e : realify_gate(g, ancilla).emitted) out.append(std::move(e));
  }
  TranspileReport report = make_report("realify", c, out, 0.0);
  return {std::move(out), report};
}

}  // namespace threbase::passes
