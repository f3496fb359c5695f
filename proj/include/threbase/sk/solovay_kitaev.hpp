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
#include <initializer_list>
#include <limits>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "threbase/core/distance.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/matrix.hpp"
#include "threbase/sk/commutator.hpp"
#include "threbase/sk/gateset.hpp"
#include "threbase/sk/net.hpp"

namespace threbase::sk {

/// Neighbours per factor searched jointly at the base level (1 = plain nearest).
inline constexpr std::size_t kDefaultJointCandidates = 64;

struct SkConfig {
  double eps = 1e-2;
  std::size_t depth = 3;
  const Net* net = nullptr;
  double commutator_tol = kDefaultCommutatorTol;
  std::size_t joint_candidates = kDefaultJointCandidates;
};

/// A generator word and its phase-invariant distance to the target.
struct Approximation {
  Sequence seq;
  double achieved = 0.0;
};

/// Accuracy budget not met; carries the best word found.
class SkBudgetError : public Error {
 public:
  SkBudgetError(const std::string& what, Approximation best) : Error(what), best_(std::move(best)) {}
  const Approximation& best() const { return best_; }

 private:
  Approximation best_;
};

namespace detail {

struct Partial {
  Sequence seq;
  CMatrix matrix;
};

inline Partial lookup(const Net& net, const CMatrix& u) {
  const NetMatch m = nearest(net, u);
  const NetEntry& e = net.entries()[m.index];
  return {e.seq, e.matrix};
}

inline Partial inverse(const GateSet& gs, const Partial& p) { return {gs.inverse(p.seq), adjoint(p.matrix)}; }

/**
 * Base-level choice of (V, W): among the `count` nearest entries to each
 * factor, the pair whose commutator times `prev` lands closest to `u`.
 */
inline std::pair<Partial, Partial> joint_lookup(const Net& net, const CMatrix& v, const CMatrix& w,
                                                const CMatrix& prev, const CMatrix& u, std::size_t count) {
  const auto vs = nearest_k(net, v, count);
  const auto ws = nearest_k(net, w, count);
  std::size_t best_v = vs.front(), best_w = ws.front();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : vs) {
    const CMatrix& ma = net.entries()[a].matrix;
    const CMatrix ma_inv = adjoint(ma);
    for (std::size_t b : ws) {
      const CMatrix& mb = net.entries()[b].matrix;
      const double d = unitary_distance(ma * mb * ma_inv * adjoint(mb) * prev, u);
      if (d < best - kTieTol) best = d, best_v = a, best_w = b;
    }
  }
  const auto& ev = net.entries()[best_v];
  const auto& ew = net.entries()[best_w];
  return {Partial{ev.seq, ev.matrix}, Partial{ew.seq, ew.matrix}};
}

inline Partial recurse(const Net& net, const CMatrix& u, std::size_t depth, double commutator_tol,
                       std::size_t joint) {
  if (depth == 0) return lookup(net, u);
  Partial prev = recurse(net, u, depth - 1, commutator_tol, joint);
  const double prev_dist = unitary_distance(prev.matrix, u);
  if (prev_dist < 1e-15) return prev;
  const CMatrix delta = u * adjoint(prev.matrix);
  if (unitary_distance(delta, CMatrix::identity(2)) > 0.5) return prev;
  const CommutatorFactors f = gc_decompose(delta, commutator_tol);
  Partial v, w;
  if (depth == 1 && joint > 1) {
    std::tie(v, w) = joint_lookup(net, f.v, f.w, prev.matrix, u, joint);
  } else {
    v = recurse(net, f.v, depth - 1, commutator_tol, joint);
    w = recurse(net, f.w, depth - 1, commutator_tol, joint);
  }
  const GateSet& gs = net.gateset();
  const Partial vi = inverse(gs, v), wi = inverse(gs, w);

  // Application order: prev, W†, V†, W, V  ⇒  matrix V W V† W† prev.
  Partial out;
  out.seq = prev.seq;
  for (const Partial* p : std::initializer_list<const Partial*>{&wi, &vi, &w, &v}) out.seq.insert(out.seq.end(), p->seq.begin(), p->seq.end());
  out.matrix = v.matrix * w.matrix * vi.matrix * wi.matrix * prev.matrix;
  // Refinement never makes the approximation worse.
  return unitary_distance(out.matrix, u) <= prev_dist ? out : prev;
}

}  // namespace detail

/**
 * Solovay–Kitaev refinement without an accuracy requirement: net lookup at
 * depth 0, group-commutator correction of the residual at each further level.
 * Words grow by at most a factor 5 per level. `achieved` is measured on the
 * re-evaluated word.
 */
inline Approximation sk_refine(const CMatrix& u, const Net& net, std::size_t depth,
                               double commutator_tol = kDefaultCommutatorTol,
                               std::size_t joint_candidates = kDefaultJointCandidates) {
  if (net.dim() != 2) throw DimensionError("sk_approx: recursion is implemented for single-qubit nets only");
  if (u.dim() != 2) throw DimensionError("sk_approx: single-qubit target required");
  if (!u.is_unitary()) throw ValidationError("sk_approx: target is not unitary");
  detail::Partial p = detail::recurse(net, u, depth, commutator_tol, joint_candidates);
  return {p.seq, unitary_distance(net.gateset().evaluate(p.seq), u)};
}

/// sk_refine at cfg.depth, failing with SkBudgetError when cfg.eps is not reached.
inline Approximation sk_approx(const CMatrix& u, const SkConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw ValidationError("sk_approx: eps must be positive");
  if (cfg.net == nullptr) throw ValidationError("sk_approx: no net configured");
  Approximation a = sk_refine(u, *cfg.net, cfg.depth, cfg.commutator_tol, cfg.joint_candidates);
  if (a.achieved > cfg.eps) {
    throw SkBudgetError("sk_approx: best distance " + std::to_string(a.achieved) + " exceeds eps " +
                            std::to_string(cfg.eps) + " at depth " + std::to_string(cfg.depth),
                        std::move(a));
  }
  return a;
}

/// Depth-0 search of a two-qubit net; no accuracy guarantee beyond its covering radius.
inline Approximation net_search_2q(const CMatrix& u, const Net& net) {
  if (u.dim() != 4 || net.dim() != 4) throw DimensionError("net_search_2q: two-qubit target and net required");
  if (!u.is_unitary()) throw ValidationError("net_search_2q: target is not unitary");
  const NetMatch m = nearest(net, u);
  return {net.entries()[m.index].seq, m.distance};
}

}  // namespace threbase::sk
