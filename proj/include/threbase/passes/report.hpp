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

#include "threbase/core/circuit.hpp"

namespace threbase::passes {

/// Resource accounting for one compilation pass (or a chain of them).
struct TranspileReport {
  std::string pass;
  std::size_t input_gates = 0;
  std::size_t output_gates = 0;
  std::size_t input_qubits = 0;
  std::size_t output_qubits = 0;
  std::size_t input_depth = 0;
  std::size_t output_depth = 0;
  /// Upper bound on dist(output unitary, input unitary).
  double error_bound = 0.0;
};

inline TranspileReport make_report(std::string pass, const Circuit& in, const Circuit& out, double error_bound) {
  return {std::move(pass), in.size(),        out.size(),         in.n_qubits(),
          out.n_qubits(),  circuit_depth(in), circuit_depth(out), error_bound};
}

/// Report for running `first` then `second`; errors add by subadditivity.
inline TranspileReport chain(const TranspileReport& first, const TranspileReport& second) {
  return {first.pass + "+" + second.pass, first.input_gates,  second.output_gates,
          first.input_qubits,             second.output_qubits, first.input_depth,
          second.output_depth,            first.error_bound + second.error_bound};
}

/// A transformed circuit together with its accounting.
struct PassResult {
  Circuit circuit;
  TranspileReport report;
};

}  // namespace threbase::passes
