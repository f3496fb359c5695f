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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "threbase/core/circuit.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/matrix.hpp"

namespace threbase::verify {

class StateVector {
 public:
  /// |index> on n qubits.
  static StateVector basis(std::size_t n_qubits, std::size_t index, std::size_t max_qubits = kDefaultMaxQubits) {
    check_qubit_cap(n_qubits, max_qubits);
    StateVector sv;
    sv.n_qubits_ = n_qubits;
    sv.amps_.assign(std::size_t{1} << n_qubits, cplx(0.0));
    if (index >= sv.amps_.size()) {
      throw ValidationError("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(n_qubits) + " qubit(s)");
    }
    sv.amps_[index] = 1.0;
    return sv;
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0.0;
    for (cplx a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  /**
   * Applies `gate` in place. Iterates over basis indices with every operand
   * bit clear, gathers the 2^k amplitudes of that block, multiplies by the
   * gate's local matrix and scatters them back.
   */
  void apply(const Gate& gate) {
    const std::size_t k = gate.arity();
    const std::size_t block = std::size_t{1} << k;
    const CMatrix m = gate.matrix();
    std::vector<std::size_t> offsets(block, 0);
    std::size_t op_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t q = gate.qubits()[j];
      if (q >= n_qubits_) throw ValidationError("StateVector::apply: operand out of range");
      const std::size_t bit = std::size_t{1} << bit_of(q, n_qubits_);
      op_mask |= bit;
      for (std::size_t li = 0; li < block; ++li)
        if ((li >> (k - 1 - j)) & 1u) offsets[li] |= bit;
    }
    std::vector<cplx> in(block), out(block);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
      if (base & op_mask) continue;
      for (std::size_t li = 0; li < block; ++li) in[li] = amps_[base | offsets[li]];
      for (std::size_t r = 0; r < block; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < block; ++c) acc += m(r, c) * in[c];
        out[r] = acc;
      }
      for (std::size_t li = 0; li < block; ++li) amps_[base | offsets[li]] = out[li];
    }
  }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<cplx> amps_;
};

/// Runs `c` on the basis state |input>.
inline StateVector run(const Circuit& c, std::size_t input, std::size_t max_qubits = kDefaultMaxQubits) {
  StateVector sv = StateVector::basis(c.n_qubits(), input, max_qubits);
  for (const auto& g : c.gates()) sv.apply(g);
  return sv;
}

}  // namespace threbase::verify
