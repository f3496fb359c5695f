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
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "threbase/core/circuit.hpp"
#include "threbase/core/distance.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/gates.hpp"
#include "threbase/core/matrix.hpp"

namespace threbase::sk {

/// Generator indices in application order (index 0 applied first).
using Sequence = std::vector<std::size_t>;

struct Generator {
  std::string label;
  /// Gate on local qubits 0..arity-1 of the set's domain.
  Gate gate;
};

/**
 * Named finite generating set over a fixed number of qubits.
 *
 * Each generator must have an inverse: either another single generator
 * (possibly itself) or, failing that, a power of itself, e.g. CS^-1 = CS^3.
 */
class GateSet {
 public:
  /// Longest power searched when synthesizing an inverse.
  static constexpr std::size_t kMaxOrder = 64;

  GateSet(std::string name, std::size_t arity, std::vector<Generator> generators, double tol = kUnitaryTol)
      : name_(std::move(name)), arity_(arity), generators_(std::move(generators)) {
    if (arity_ < 1 || arity_ > 3) throw ValidationError("GateSet: arity must be 1..3");
    if (generators_.empty()) throw ValidationError("GateSet: no generators");
    const std::size_t dim = std::size_t{1} << arity_;
    for (const auto& g : generators_) {
      for (std::size_t q : g.gate.qubits())
        if (q >= arity_) throw ValidationError("GateSet: generator " + g.label + " leaves the domain");
      for (const auto& other : generators_)
        if (&other != &g && other.label == g.label) throw ValidationError("GateSet: duplicate label " + g.label);
      matrices_.push_back(embed(g.gate, arity_));
      if (!matrices_.back().is_unitary(tol)) throw ValidationError("GateSet: generator " + g.label + " not unitary");
    }
    closed_ = true;
    const CMatrix id = CMatrix::identity(dim);
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      std::optional<Sequence> inv;
      for (std::size_t j = 0; j < generators_.size() && !inv; ++j)
        if (unitary_distance(matrices_[j] * matrices_[i], id) <= tol) inv = Sequence{j};
      if (!inv) {
        closed_ = false;
        CMatrix p = matrices_[i];
        for (std::size_t order = 2; order <= kMaxOrder && !inv; ++order) {
          p = matrices_[i] * p;
          if (unitary_distance(p, id) <= tol) inv = Sequence(order - 1, i);
        }
      }
      if (!inv) {
        throw ValidationError("GateSet: generator " + generators_[i].label +
                              " has no inverse in the set and no finite order");
      }
      inverses_.push_back(std::move(*inv));
    }
  }

  const std::string& name() const { return name_; }
  std::size_t arity() const { return arity_; }
  std::size_t dim() const { return std::size_t{1} << arity_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::string& label(std::size_t i) const { return generators_.at(i).label; }
  const CMatrix& matrix(std::size_t i) const { return matrices_.at(i); }

  /// True when every generator's inverse is itself a single generator.
  bool closed_under_inverse() const { return closed_; }

  /// Generator word whose product is the inverse of generator i.
  const Sequence& inverse_of(std::size_t i) const { return inverses_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i].label == label) return i;
    return std::nullopt;
  }

  Sequence inverse(std::span<const std::size_t> seq) const {
    Sequence out;
    out.reserve(seq.size());
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
      const auto& inv = inverse_of(*it);
      out.insert(out.end(), inv.begin(), inv.end());
    }
    return out;
  }

  /// Product G_last ... G_first.
  CMatrix evaluate(std::span<const std::size_t> seq) const {
    CMatrix acc = CMatrix::identity(dim());
    for (std::size_t i : seq) acc = matrix(i) * acc;
    return acc;
  }

  std::vector<std::string> labels(std::span<const std::size_t> seq) const {
    std::vector<std::string> out;
    out.reserve(seq.size());
    for (std::size_t i : seq) out.push_back(label(i));
    return out;
  }

  /// Concrete gates for `seq`, mapping local qubit j to operands[j].
  std::vector<Gate> instantiate(std::span<const std::size_t> seq, std::span<const std::size_t> operands) const {
    if (operands.size() != arity_) throw ValidationError("GateSet::instantiate: operand count mismatch");
    std::vector<Gate> out;
    out.reserve(seq.size());
    for (std::size_t i : seq) {
      const Gate& tmpl = generators_.at(i).gate;
      std::vector<std::size_t> qs;
      for (std::size_t q : tmpl.qubits()) qs.push_back(operands[q]);
      out.push_back(tmpl.on(std::move(qs)));
    }
    return out;
  }

  /// FNV-1a over the set name, labels and generator matrices (17 digits).
  std::string fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::string_view s) {
      for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    };
    mix(name_);
    char buf[64];
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      mix("|");
      mix(generators_[i].label);
      for (cplx z : matrices_[i].entries()) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g", z.real() + 0.0, z.imag() + 0.0);
        mix(buf);
      }
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  std::string name_;
  std::size_t arity_;
  std::vector<Generator> generators_;
  std::vector<CMatrix> matrices_;
  std::vector<Sequence> inverses_;
  bool closed_ = false;
};

/// The two-qubit Kitaev set {CS, H⊗I, I⊗H}; CS^-1 is synthesized as CS^3.
inline GateSet kitaev_set() {
  return GateSet("kitaev", 2, {{"CS", gates::CS(0, 1)}, {"H0", gates::H(0)}, {"H1", gates::H(1)}});
}

/// T = diag(1, e^{iπ/4}).
inline CMatrix t_matrix() { return CMatrix::diagonal({1.0, std::polar(1.0, std::numbers::pi / 4)}); }

/// Single-qubit demo set {H, T, T†}: dense in SU(2), used to exercise the
/// Solovay–Kitaev recursion. Not one of the compilation targets.
inline GateSet demo_set() {
  return GateSet("demo", 1,
                 {{"H", gates::H(0)},
                  {"T", Gate::generic(t_matrix(), {0})},
                  {"Tdg", Gate::generic(adjoint(t_matrix()), {0})}});
}

/// Single-qubit {H, S}; generates a finite group, so its nets saturate.
inline GateSet hs_set() { return GateSet("hs", 1, {{"H", gates::H(0)}, {"S", gates::S(0)}}); }

inline std::vector<std::string> builtin_gateset_names() { return {"kitaev", "demo", "hs"}; }

inline GateSet builtin_gateset(std::string_view name) {
  if (name == "kitaev") return kitaev_set();
  if (name == "demo") return demo_set();
  if (name == "hs") return hs_set();
  throw ValidationError("unknown gate set '" + std::string(name) + "' (expected kitaev, demo or hs)");
}

}  // namespace threbase::sk
