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

// Rebases a small circuit onto {H, CS}, realifies it onto {H, CCX} and checks
// the result on every basis input.

#include <iostream>

#include "threbase/threbase.hpp"

int main() {
  using namespace threbase;
  const Circuit c(2, {gates::H(0), gates::CNOT(0, 1), gates::CS(1, 0), gates::CZ(0, 1)});

  const sk::Net net = sk::build_net(sk::kitaev_set(), 4);
  const passes::PassResult kitaev = passes::rebase_circuit(c, net, 1e-6);
  const passes::PassResult th = passes::realify_circuit(kitaev.circuit);

  const auto check = verify::check_realified(c, th.circuit);
  const auto overhead = verify::overhead_stats(th.report);
  std::cout << io::emit_circuit(th.circuit);
  std::cout << "gates " << c.size() << " -> " << kitaev.circuit.size() << " -> " << th.circuit.size()
            << ", qubits " << c.n_qubits() << " -> " << th.circuit.n_qubits() << "\n";
  std::cout << "max deviation " << check.max_deviation << (check.passed ? " (ok)" : " (FAILED)") << "\n";
  std::cout << "realify overhead " << (overhead.passed ? "within bounds" : "out of bounds") << "\n";
  return check.passed && overhead.passed ? 0 : 1;
}
