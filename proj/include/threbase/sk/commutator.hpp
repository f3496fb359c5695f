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
#include <numbers>
#include <string>

#include "threbase/core/distance.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/matrix.hpp"

namespace threbase::sk {

inline constexpr double kDefaultCommutatorTol = 1e-9;

/// Unit quaternion (w, x, y, z) for U = w·I − i(x·X + y·Y + z·Z), sign fixed so w ≥ 0.
struct Quaternion {
  double w = 1.0;
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double axis_norm() const { return std::hypot(v[0], v[1], v[2]); }
  /// Rotation angle in [0, π].
  double angle() const { return 2.0 * std::atan2(axis_norm(), w); }
};

/// Strips the global phase of a 2x2 unitary and returns its SU(2) quaternion.
inline Quaternion to_quaternion(const CMatrix& u) {
  if (u.dim() != 2) throw DimensionError("to_quaternion: expected a 2x2 matrix");
  const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const cplx s = 1.0 / std::polar(1.0, std::arg(det) / 2.0);
  const cplx a = u(0, 0) * s, b = u(0, 1) * s, c = u(1, 0) * s, d = u(1, 1) * s;
  Quaternion q{(a + d).real() / 2.0, {-(b + c).imag() / 2.0, (c - b).real() / 2.0, (d - a).imag() / 2.0}};
  if (q.w < 0.0) q = {-q.w, {-q.v[0], -q.v[1], -q.v[2]}};
  const double n = std::hypot(q.w, q.axis_norm());
  q.w /= n;
  for (double& x : q.v) x /= n;
  return q;
}

inline CMatrix from_quaternion(const Quaternion& q) {
  const cplx i(0.0, 1.0);
  return CMatrix{{q.w - i * q.v[2], -i * q.v[0] - q.v[1]}, {-i * q.v[0] + q.v[1], q.w + i * q.v[2]}};
}

/// exp(−iθ n·σ/2) for a unit axis n.
inline CMatrix rotation(const std::array<double, 3>& axis, double angle) {
  const double s = std::sin(angle / 2.0);
  return from_quaternion({std::cos(angle / 2.0), {s * axis[0], s * axis[1], s * axis[2]}});
}

/// V W V† W†.
inline CMatrix group_commutator(const CMatrix& v, const CMatrix& w) { return v * w * adjoint(v) * adjoint(w); }

struct CommutatorFactors {
  CMatrix v;
  CMatrix w;
  /// dist(Δ, V W V† W†).
  double residual = 0.0;
};

/**
 * Balanced group-commutator factorization Δ ≈ V W V† W† of a single-qubit
 * unitary close to the identity.
 *
 * V and W start as x- and y-rotations by a common angle φ. φ is found by
 * bisecting on the rotation angle of their commutator until it matches the
 * angle of Δ, then both are conjugated so the commutator's axis lines up with
 * the axis of Δ.
 */
inline CommutatorFactors gc_decompose(const CMatrix& delta, double tol = kDefaultCommutatorTol) {
  if (delta.dim() != 2) throw DimensionError("gc_decompose: single-qubit input required");
  const CMatrix id = CMatrix::identity(2);
  const double from_id = unitary_distance(delta, id);
  if (from_id > 0.5) {
    throw ValidationError("gc_decompose: input is " + std::to_string(from_id) + " from identity (limit 0.5)");
  }
  const Quaternion target = to_quaternion(delta);
  const double theta = target.angle();
  if (target.axis_norm() < 1e-15) return {id, id, from_id};

  constexpr std::array<double, 3> kX{1, 0, 0}, kY{0, 1, 0};
  auto commutator_at = [&](double phi) { return group_commutator(rotation(kX, phi), rotation(kY, phi)); };
  auto angle_at = [&](double phi) { return to_quaternion(commutator_at(phi)).angle(); };

  // The commutator angle grows monotonically on [0, π/2], reaching 2π/3.
  double lo = 0.0, hi = std::numbers::pi / 2.0;
  if (angle_at(hi) < theta) throw Error("gc_decompose: rotation angle out of bisection range");
  int iters = 0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (angle_at(mid) < theta ? lo : hi) = mid;
    if (++iters > 200) throw Error("gc_decompose: bisection did not converge");
  }
  const double phi = 0.5 * (lo + hi);

  // Rotate the commutator's axis m onto Δ's axis n.
  const Quaternion c = to_quaternion(commutator_at(phi));
  const double cn = c.axis_norm(), tn = target.axis_norm();
  const std::array<double, 3> m{c.v[0] / cn, c.v[1] / cn, c.v[2] / cn};
  const std::array<double, 3> n{target.v[0] / tn, target.v[1] / tn, target.v[2] / tn};
  std::array<double, 3> cross{m[1] * n[2] - m[2] * n[1], m[2] * n[0] - m[0] * n[2], m[0] * n[1] - m[1] * n[0]};
  const double dot = m[0] * n[0] + m[1] * n[1] + m[2] * n[2];
  const double cross_norm = std::hypot(cross[0], cross[1], cross[2]);
  CMatrix align = id;
  if (cross_norm > 1e-14) {
    for (double& x : cross) x /= cross_norm;
    align = rotation(cross, std::atan2(cross_norm, dot));
  } else if (dot < 0.0) {
    // Antiparallel: half turn about any axis perpendicular to m.
    std::array<double, 3> perp = std::abs(m[0]) < 0.9 ? std::array<double, 3>{0, -m[2], m[1]}
                                                        : std::array<double, 3>{-m[2], 0, m[0]};
    const double pn = std::hypot(perp[0], perp[1], perp[2]);
    for (double& x : perp) x /= pn;
    align = rotation(perp, std::numbers::pi);
  }
  CommutatorFactors out;
  out.v = align * rotation(kX, phi) * adjoint(align);
  out.w = align * rotation(kY, phi) * adjoint(align);
  out.residual = unitary_distance(delta, group_commutator(out.v, out.w));
  if (out.residual > tol) {
    throw Error("gc_decompose: residual " + std::to_string(out.residual) + " exceeds tolerance");
  }
  return out;
}

}  // namespace threbase::sk
