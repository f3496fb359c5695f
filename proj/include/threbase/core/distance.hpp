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
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "threbase/core/matrix.hpp"

namespace threbase {

/// Largest singular value.
inline double spectral_norm(const CMatrix& m) {
  if (m.dim() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m.eigen()));
  return svd.singularValues()(0);
}

struct PhaseDistance {
  double distance = 0.0;
  /// Global phase φ attaining the minimum of ‖a − e^{iφ} b‖.
  double phase = 0.0;
};

/**
 * Operator-norm distance modulo global phase, min_φ ‖a − e^{iφ} b‖₂,
 * together with the minimizing phase.
 *
 * The phase is located by a coarse scan over [0, 2π) followed by a
 * golden-section refinement of each locally minimal bracket down to 1e-10 rad.
 */
inline PhaseDistance dist_with_phase(const CMatrix& a, const CMatrix& b) {
  CMatrix::require_same_dim(a, b, "dist");
  auto f = [&](double phi) { return spectral_norm(a - std::polar(1.0, phi) * b); };

  constexpr int kScan = 64;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double step = kTwoPi / kScan;
  std::vector<double> scan(kScan);
  for (int k = 0; k < kScan; ++k) scan[k] = f(k * step);

  // Refine around every local minimum of the scan.
  PhaseDistance best{scan[0], 0.0};
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < kScan; ++k) {
    const double prev = scan[(k + kScan - 1) % kScan], next = scan[(k + 1) % kScan];
    if (scan[k] > prev || scan[k] > next) continue;
    if (scan[k] < best.distance) best = {scan[k], k * step};
    double lo = (k - 1) * step, hi = (k + 1) * step;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
      if (f1 < f2) {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - gr * (hi - lo), f1 = f(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + gr * (hi - lo), f2 = f(x2);
      }
      if (f1 < best.distance) best = {f1, x1};
      if (f2 < best.distance) best = {f2, x2};
    }
  }
  best.phase = std::fmod(best.phase + kTwoPi, kTwoPi);
  return best;
}

/// min over global phase φ of ‖a − e^{iφ} b‖₂.
inline double dist(const CMatrix& a, const CMatrix& b) { return dist_with_phase(a, b).distance; }

/**
 * Closed-form phase-invariant distance for unitary a, b.
 *
 * With eigenphases of a†b covering a minimal arc of width w, the optimum is
 * 2·sin(w/4); for 2×2 that is sqrt(2 − |tr(a†b)|), evaluated here through the
 * SU(2) rotation angle to keep precision near zero. Agrees with dist() on
 * unitaries and is much cheaper; net lookups use it.
 */
inline double unitary_distance(const CMatrix& a, const CMatrix& b) {
  CMatrix::require_same_dim(a, b, "unitary_distance");
  if (a.dim() == 1) return 0.0;
  if (a.dim() == 2) {
    // m = a†b; its eigenphases are α ± θ/2 with θ the SU(2) rotation angle of m.
    cplx m[2][2];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m[r][c] = std::conj(a(0, r)) * b(0, c) + std::conj(a(1, r)) * b(1, c);
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const cplx s = 1.0 / std::polar(1.0, std::arg(det) / 2.0);
    const double w = std::abs(((m[0][0] + m[1][1]) * s).real()) / 2.0;
    const double x = ((m[0][1] + m[1][0]) * s).imag() / 2.0;
    const double y = ((m[1][0] - m[0][1]) * s).real() / 2.0;
    const double z = ((m[1][1] - m[0][0]) * s).imag() / 2.0;
    const double theta = 2.0 * std::atan2(std::hypot(x, y, z), w);
    return 2.0 * std::sin(theta / 4.0);
  }

  const Eigen::MatrixXcd prod = a.eigen().adjoint() * b.eigen();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(prod, false);
  std::vector<double> angles;
  angles.reserve(a.dim());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) angles.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(angles.begin(), angles.end());
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double gap = angles.front() + kTwoPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  const double arc = std::max(0.0, kTwoPi - gap);
  return 2.0 * std::sin(arc / 4.0);
}

/// Lower bound on unitary_distance from the trace overlap: ‖·‖_F ≤ √d ‖·‖₂.
inline double distance_lower_bound(double overlap_abs, std::size_t dim) {
  const double d = static_cast<double>(dim);
  return std::sqrt(std::max(0.0, 2.0 * d - 2.0 * overlap_abs) / d);
}

}  // namespace threbase
