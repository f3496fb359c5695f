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

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "threbase/core/errors.hpp"
#include "threbase/core/gates.hpp"
#include "threbase/core/matrix.hpp"

namespace threbase {

/// Default cap on qubits for dense simulation; 2^12 amplitudes per column.
inline constexpr std::size_t kDefaultMaxQubits = 12;

/// Bit position of `qubit` inside an n-qubit basis index (qubit 0 is the MSB).
inline constexpr std::size_t bit_of(std::size_t qubit, std::size_t n_qubits) { return n_qubits - 1 - qubit; }

/**
 * Qubit count plus an ordered gate list. Gate 0 is applied first, so the
 * circuit's unitary is G_t ... G_1.
 */
class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits = 0) : n_qubits_(n_qubits) {}

  Circuit(std::size_t n_qubits, std::vector<Gate> gates) : n_qubits_(n_qubits) {
    gates_.reserve(gates.size());
    for (auto& g : gates) append(std::move(g));
  }

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Circuit& append(Gate g) {
    for (std::size_t q : g.qubits()) {
      if (q >= n_qubits_) {
        throw ValidationError(std::string(g.name()) + ": operand " + std::to_string(q) +
                              " out of range for " + std::to_string(n_qubits_) + "-qubit circuit");
      }
    }
    gates_.push_back(std::move(g));
    return *this;
  }

  /// Appends every gate of `other`; both circuits must have the same width.
  Circuit& append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) throw DimensionError("Circuit::append: qubit count mismatch");
    for (const auto& g : other.gates_) gates_.push_back(g);
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
};

/// a followed by b.
inline Circuit concat(Circuit a, const Circuit& b) { return a.append(b); }

/// Number of layers when gates on disjoint qubits are packed greedily.
inline std::size_t circuit_depth(const Circuit& c) {
  std::vector<std::size_t> level(c.n_qubits(), 0);
  std::size_t depth = 0;
  for (const auto& g : c.gates()) {
    std::size_t l = 0;
    for (std::size_t q : g.qubits()) l = std::max(l, level[q]);
    ++l;
    for (std::size_t q : g.qubits()) level[q] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

inline void check_qubit_cap(std::size_t n_qubits, std::size_t max_qubits) {
  if (n_qubits > max_qubits) {
    throw CapExceeded(std::to_string(n_qubits) + " qubits exceeds the dense simulation cap of " +
                      std::to_string(max_qubits));
  }
}

/// 2^n-dimensional matrix acting as `gate` on its operands and as identity elsewhere.
inline CMatrix embed(const Gate& gate, std::size_t n_qubits) {
  for (std::size_t q : gate.qubits()) {
    if (q >= n_qubits) {
      throw ValidationError("embed: operand " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits) + " qubit(s)");
    }
  }
  if (n_qubits >= 8 * sizeof(std::size_t) - 1) throw CapExceeded("embed: qubit count too large");
  const CMatrix local = gate.matrix();
  const std::size_t k = gate.arity();
  const std::size_t dim = std::size_t{1} << n_qubits;

  std::vector<std::size_t> masks(k);
  std::size_t op_mask = 0;
  for (std::size_t j = 0; j < k; ++j) {
    masks[j] = std::size_t{1} << bit_of(gate.qubits()[j], n_qubits);
    op_mask |= masks[j];
  }
  auto local_index = [&](std::size_t idx) {
    std::size_t li = 0;
    for (std::size_t j = 0; j < k; ++j) li = (li << 1) | ((idx & masks[j]) ? 1u : 0u);
    return li;
  };
  auto scatter = [&](std::size_t base, std::size_t li) {
    std::size_t idx = base;
    for (std::size_t j = 0; j < k; ++j)
      if ((li >> (k - 1 - j)) & 1u) idx |= masks[j];
    return idx;
  };

  CMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t base = col & ~op_mask;
    const std::size_t lc = local_index(col);
    for (std::size_t lr = 0; lr < (std::size_t{1} << k); ++lr) out(scatter(base, lr), col) = local(lr, lc);
  }
  return out;
}

/// embed(G_t) ... embed(G_1) for the circuit's gates G_1..G_t.
inline CMatrix circuit_unitary(const Circuit& c, std::size_t max_qubits = kDefaultMaxQubits) {
  check_qubit_cap(c.n_qubits(), max_qubits);
  const std::size_t dim = std::size_t{1} << c.n_qubits();
  CMatrix acc = CMatrix::identity(dim);
  for (const auto& g : c.gates()) {
    // Embedded gates have at most 2^k nonzeros per row; skip the zeros.
    const CMatrix e = embed(g, c.n_qubits());
    CMatrix next(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k) {
        const cplx erk = e(r, k);
        if (erk == cplx(0.0)) continue;
        for (std::size_t col = 0; col < dim; ++col) next(r, col) += erk * acc(k, col);
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace threbase
