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
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "threbase/core/circuit.hpp"
#include "threbase/core/distance.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/passes/report.hpp"
#include "threbase/verify/statevector.hpp"

namespace threbase::verify {

inline constexpr double kEquivalenceTol = 1e-10;
inline constexpr double kIdentityTol = 1e-12;

enum class CheckKind { ExactUnitary, Realified, MeasurementStats };

inline std::string_view check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::ExactUnitary: return "exact";
    case CheckKind::Realified: return "realified";
    case CheckKind::MeasurementStats: return "stats";
  }
  return "?";
}

struct EquivalenceReport {
  CheckKind kind = CheckKind::ExactUnitary;
  double max_deviation = 0.0;
  /// Deviation per input basis state of the original circuit.
  std::vector<double> per_basis;
  double tolerance = kEquivalenceTol;
  bool passed = true;

  std::size_t worst_basis() const {
    return per_basis.empty() ? 0
                             : static_cast<std::size_t>(std::max_element(per_basis.begin(), per_basis.end()) -
                                                        per_basis.begin());
  }
};

namespace detail {

inline EquivalenceReport finish(CheckKind kind, std::vector<double> per_basis, double max_dev, double tol) {
  EquivalenceReport r{kind, max_dev, std::move(per_basis), tol, false};
  r.passed = r.max_deviation <= tol;
  return r;
}

inline void require_one_extra_qubit(const Circuit& original, const Circuit& realified) {
  if (realified.n_qubits() != original.n_qubits() + 1) {
    throw DimensionError("realified circuit must have exactly one more qubit (" +
                         std::to_string(original.n_qubits()) + " vs " + std::to_string(realified.n_qubits()) + ")");
  }
}

}  // namespace detail

/**
 * For each basis input |i>, compares the realified circuit's output on
 * |i>|0> against (Re U|i>)|0> + (Im U|i>)|1>, U the original's unitary.
 */
inline EquivalenceReport check_realified(const Circuit& original, const Circuit& realified,
                                         double tol = kEquivalenceTol, std::size_t max_qubits = kDefaultMaxQubits) {
  detail::require_one_extra_qubit(original, realified);
  check_qubit_cap(realified.n_qubits(), max_qubits);
  const CMatrix u = circuit_unitary(original, max_qubits);
  const std::size_t dim = u.dim();
  std::vector<double> dev(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const StateVector out = run(realified, i << 1, max_qubits);
    double s = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      s += std::norm(out[r << 1] - u(r, i).real());
      s += std::norm(out[(r << 1) | 1] - u(r, i).imag());
    }
    dev[i] = std::sqrt(s);
  }
  const double worst = *std::max_element(dev.begin(), dev.end());
  return detail::finish(CheckKind::Realified, std::move(dev), worst, tol);
}

/// | |<j|U|i>|² − Σ_b |<j,b|R|i,0>|² | over all inputs i and outcomes j.
inline EquivalenceReport check_measurement_stats(const Circuit& original, const Circuit& realified,
                                                 double tol = kEquivalenceTol,
                                                 std::size_t max_qubits = kDefaultMaxQubits) {
  detail::require_one_extra_qubit(original, realified);
  check_qubit_cap(realified.n_qubits(), max_qubits);
  const std::size_t dim = std::size_t{1} << original.n_qubits();
  std::vector<double> dev(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const StateVector ideal = run(original, i, max_qubits);
    const StateVector real = run(realified, i << 1, max_qubits);
    double worst = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double p = std::norm(ideal[j]);
      const double q = std::norm(real[j << 1]) + std::norm(real[(j << 1) | 1]);
      worst = std::max(worst, std::abs(p - q));
    }
    dev[i] = worst;
  }
  const double worst = *std::max_element(dev.begin(), dev.end());
  return detail::finish(CheckKind::MeasurementStats, std::move(dev), worst, tol);
}

/**
 * Phase-invariant operator distance between the two circuits' unitaries.
 * Per-basis entries are column deviations ‖(A − e^{iφ}B)|i>‖ at the optimal phase.
 */
inline EquivalenceReport check_exact(const Circuit& a, const Circuit& b, double tol = kEquivalenceTol,
                                     std::size_t max_qubits = kDefaultMaxQubits) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("check_exact: qubit count mismatch");
  const CMatrix ua = circuit_unitary(a, max_qubits), ub = circuit_unitary(b, max_qubits);
  const PhaseDistance pd = dist_with_phase(ua, ub);
  const cplx phase = std::polar(1.0, pd.phase);
  std::vector<double> dev(ua.dim());
  for (std::size_t c = 0; c < ua.dim(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < ua.dim(); ++r) s += std::norm(ua(r, c) - phase * ub(r, c));
    dev[c] = std::sqrt(s);
  }
  return detail::finish(CheckKind::ExactUnitary, std::move(dev), pd.distance, tol);
}

struct OverheadCheck {
  bool passed = false;
  bool gate_bound = false;
  bool one_ancilla = false;
};

/// Realification bounds: at most 4t output gates and exactly one extra qubit.
inline OverheadCheck overhead_stats(const passes::TranspileReport& r) {
  OverheadCheck c;
  c.gate_bound = r.output_gates <= 4 * r.input_gates;
  c.one_ancilla = r.output_qubits == r.input_qubits + 1;
  c.passed = c.gate_bound && c.one_ancilla;
  return c;
}

}  // namespace threbase::verify
