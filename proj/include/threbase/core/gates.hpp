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

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "threbase/core/errors.hpp"
#include "threbase/core/matrix.hpp"

namespace threbase {

/// Primitive gate kinds. S is the phase gate P(i) = diag(1, i); CS is its
/// controlled version; CCX is the Toffoli gate.
enum class GateKind { H, X, Z, S, SDG, CS, CSDG, CZ, CNOT, CCX, Generic };

inline constexpr std::array<GateKind, 10> kNamedKinds = {
    GateKind::H,  GateKind::X,    GateKind::Z,  GateKind::S,    GateKind::SDG,
    GateKind::CS, GateKind::CSDG, GateKind::CZ, GateKind::CNOT, GateKind::CCX};

/// Largest operand count for a GENERIC gate.
inline constexpr std::size_t kMaxGenericQubits = 3;

inline std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::SDG: return "SDG";
    case GateKind::CS: return "CS";
    case GateKind::CSDG: return "CSDG";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CCX: return "CCX";
    case GateKind::Generic: return "GENERIC";
  }
  return "?";
}

inline std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (GateKind k : kNamedKinds)
    if (gate_name(k) == name) return k;
  if (name == gate_name(GateKind::Generic)) return GateKind::Generic;
  return std::nullopt;
}

/// Operand count of a named kind. GENERIC has no fixed arity (returns 0).
inline constexpr std::size_t arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::SDG: return 1;
    case GateKind::CS:
    case GateKind::CSDG:
    case GateKind::CZ:
    case GateKind::CNOT: return 2;
    case GateKind::CCX: return 3;
    case GateKind::Generic: return 0;
  }
  return 0;
}

/// Matrix of a named kind. Controlled kinds act as the identity unless every
/// control (the leading operands) is |1>.
inline CMatrix gate_matrix(GateKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  switch (kind) {
    case GateKind::H: return CMatrix{{r, r}, {r, -r}};
    case GateKind::X: return CMatrix{{0, 1}, {1, 0}};
    case GateKind::Z: return CMatrix::diagonal({1, -1});
    case GateKind::S: return CMatrix::diagonal({1, i});
    case GateKind::SDG: return CMatrix::diagonal({1, -i});
    case GateKind::CS: return CMatrix::diagonal({1, 1, 1, i});
    case GateKind::CSDG: return CMatrix::diagonal({1, 1, 1, -i});
    case GateKind::CZ: return CMatrix::diagonal({1, 1, 1, -1});
    case GateKind::CNOT: return CMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    case GateKind::CCX: {
      CMatrix m = CMatrix::identity(8);
      m(6, 6) = m(7, 7) = 0.0;
      m(6, 7) = m(7, 6) = 1.0;
      return m;
    }
    case GateKind::Generic: break;
  }
  throw ValidationError("gate_matrix: GENERIC gates carry their own matrix");
}

/// Throws ValidationError unless `m` is an acceptable GENERIC gate matrix.
inline void validate_generic_matrix(const CMatrix& m, double tol = kUnitaryTol) {
  if (m.empty() || m.num_qubits() < 1 || m.num_qubits() > kMaxGenericQubits) {
    throw ValidationError("GENERIC gate must act on 1.." + std::to_string(kMaxGenericQubits) +
                          " qubits, got dimension " + std::to_string(m.dim()));
  }
  if (!m.is_unitary(tol)) {
    throw ValidationError("GENERIC gate matrix is not unitary (defect " +
                          std::to_string(unitarity_defect(m)) + ")");
  }
}

/**
 * A gate applied to an ordered operand list. For controlled kinds the
 * controls come first and the target last; operand 0 is the most significant
 * bit of the gate's local basis index.
 */
class Gate {
 public:
  Gate(GateKind kind, std::vector<std::size_t> qubits) : kind_(kind), qubits_(std::move(qubits)) {
    if (kind == GateKind::Generic) throw ValidationError("Gate: use Gate::generic for GENERIC gates");
    if (qubits_.size() != threbase::arity(kind)) {
      throw ValidationError(std::string(gate_name(kind)) + " expects " + std::to_string(threbase::arity(kind)) +
                            " operand(s), got " + std::to_string(qubits_.size()));
    }
    check_distinct();
  }

  static Gate generic(CMatrix m, std::vector<std::size_t> qubits, double tol = kUnitaryTol) {
    validate_generic_matrix(m, tol);
    if (qubits.size() != m.num_qubits()) {
      throw ValidationError("GENERIC gate: matrix acts on " + std::to_string(m.num_qubits()) +
                            " qubit(s) but " + std::to_string(qubits.size()) + " operand(s) given");
    }
    return Gate(std::move(m), std::move(qubits));
  }

  GateKind kind() const { return kind_; }
  std::string_view name() const { return gate_name(kind_); }
  const std::vector<std::size_t>& qubits() const { return qubits_; }
  std::size_t arity() const { return qubits_.size(); }
  bool is_generic() const { return kind_ == GateKind::Generic; }

  CMatrix matrix() const { return is_generic() ? *generic_ : gate_matrix(kind_); }

  /// Same gate on different operands.
  Gate on(std::vector<std::size_t> qubits) const {
    Gate g = *this;
    if (qubits.size() != qubits_.size()) throw ValidationError("Gate::on: operand count mismatch");
    g.qubits_ = std::move(qubits);
    g.check_distinct();
    return g;
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    if (a.kind_ != b.kind_ || a.qubits_ != b.qubits_) return false;
    return !a.is_generic() || *a.generic_ == *b.generic_;
  }

 private:
  Gate(CMatrix m, std::vector<std::size_t> qubits)
      : kind_(GateKind::Generic), qubits_(std::move(qubits)), generic_(std::make_shared<const CMatrix>(std::move(m))) {
    check_distinct();
  }

  void check_distinct() const {
    for (std::size_t a = 0; a < qubits_.size(); ++a)
      for (std::size_t b = a + 1; b < qubits_.size(); ++b)
        if (qubits_[a] == qubits_[b]) {
          throw ValidationError(std::string(gate_name(kind_)) + ": repeated operand " + std::to_string(qubits_[a]));
        }
  }

  GateKind kind_;
  std::vector<std::size_t> qubits_;
  std::shared_ptr<const CMatrix> generic_;
};

/// Shorthand constructors, e.g. `gates::CS(0, 1)`.
namespace gates {

inline Gate H(std::size_t q) { return Gate(GateKind::H, {q}); }
inline Gate X(std::size_t q) { return Gate(GateKind::X, {q}); }
inline Gate Z(std::size_t q) { return Gate(GateKind::Z, {q}); }
inline Gate S(std::size_t q) { return Gate(GateKind::S, {q}); }
inline Gate CS(std::size_t a, std::size_t b) { return Gate(GateKind::CS, {a, b}); }
inline Gate CZ(std::size_t a, std::size_t b) { return Gate(GateKind::CZ, {a, b}); }
inline Gate CNOT(std::size_t a, std::size_t b) { return Gate(GateKind::CNOT, {a, b}); }
inline Gate CCX(std::size_t a, std::size_t b, std::size_t c) { return Gate(GateKind::CCX, {a, b, c}); }

}  // namespace gates

}  // namespace threbase
