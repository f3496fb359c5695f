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
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/LU>

#include "threbase/core/distance.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/matrix.hpp"
#include "threbase/sk/gateset.hpp"

namespace threbase::sk {

inline constexpr std::size_t kDefaultMaxNetEntries = 5'000'000;
inline constexpr double kDefaultDedupeTol = 1e-4;

/// A generator word together with its evaluated product.
struct NetEntry {
  Sequence seq;
  CMatrix matrix;
  std::size_t length() const { return seq.size(); }
};

namespace detail {

/**
 * Spatial hash used to find an existing entry within phase-invariant
 * distance δ of a candidate.
 *
 * Matrices are mapped to SU(d) by dividing out det^{1/d}; the remaining
 * d-th-root-of-unity ambiguity is handled by probing every root. Two fixed
 * unit-norm complex projections give four real coordinates. If dist(A,B) < δ
 * then some root ω satisfies ‖A' − ωB'‖₂ ≲ 2δ, so the coordinates differ by
 * at most r = 3·√d·δ and a cell size of 2r means at most two cells per axis.
 */
class DedupeIndex {
 public:
  DedupeIndex(std::size_t dim, double delta) : dim_(dim), delta_(delta) {
    if (!(delta > 0.0)) throw ValidationError("dedupe tolerance must be positive");
    radius_ = 3.0 * std::sqrt(static_cast<double>(dim)) * delta;
    cell_ = 2.0 * radius_;
    // Fixed pseudo-random projection coefficients (splitmix64).
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&state] {
      std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
      return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
    };
    for (auto& proj : proj_) {
      proj.resize(dim * dim);
      double norm = 0.0;
      for (auto& c : proj) {
        const double re = next(), im = next();
        c = cplx(re, im);
        norm += std::norm(c);
      }
      for (auto& c : proj) c /= std::sqrt(norm);
    }
    for (std::size_t k = 0; k < dim; ++k) roots_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / dim));
  }

  /// Index of an entry within dist < δ of `m`, if any.
  std::optional<std::size_t> find(const CMatrix& m, const std::vector<NetEntry>& entries) const {
    const auto z = project(m);
    std::optional<std::size_t> hit;
    for (cplx w : roots_) {
      const std::array<double, 4> x = coords(z, w);
      std::array<std::array<std::int64_t, 2>, 4> span{};
      std::array<int, 4> counts{};
      for (int a = 0; a < 4; ++a) {
        const auto lo = cell_of(x[a] - radius_), hi = cell_of(x[a] + radius_);
        span[a] = {lo, hi};
        counts[a] = lo == hi ? 1 : 2;
      }
      for (int i0 = 0; i0 < counts[0]; ++i0)
        for (int i1 = 0; i1 < counts[1]; ++i1)
          for (int i2 = 0; i2 < counts[2]; ++i2)
            for (int i3 = 0; i3 < counts[3]; ++i3) {
              const Key key{span[0][i0], span[1][i1], span[2][i2], span[3][i3]};
              auto it = cells_.find(key);
              if (it == cells_.end()) continue;
              for (std::uint32_t idx : it->second) {
                if (hit && *hit <= idx) continue;
                if (unitary_distance(entries[idx].matrix, m) < delta_) hit = idx;
              }
            }
    }
    return hit;
  }

  void insert(const CMatrix& m, std::size_t idx) {
    const auto x = coords(project(m), cplx(1.0));
    cells_[Key{cell_of(x[0]), cell_of(x[1]), cell_of(x[2]), cell_of(x[3])}].push_back(
        static_cast<std::uint32_t>(idx));
  }

 private:
  using Key = std::array<std::int64_t, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
      return static_cast<std::size_t>(h);
    }
  };

  std::int64_t cell_of(double x) const { return static_cast<std::int64_t>(std::floor(x / cell_)); }

  std::array<cplx, 2> project(const CMatrix& m) const {
    cplx det;
    if (dim_ == 2) {
      det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    } else {
      det = Eigen::MatrixXcd(m.eigen()).determinant();
    }
    const cplx scale = 1.0 / std::polar(1.0, std::arg(det) / static_cast<double>(dim_));
    std::array<cplx, 2> z{};
    for (int k = 0; k < 2; ++k) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < dim_ * dim_; ++i) acc += proj_[k][i] * m.entries()[i];
      z[k] = acc * scale;
    }
    return z;
  }

  static std::array<double, 4> coords(const std::array<cplx, 2>& z, cplx w) {
    const cplx a = w * z[0], b = w * z[1];
    return {a.real(), a.imag(), b.real(), b.imag()};
  }

  std::size_t dim_;
  double delta_;
  double radius_ = 0.0;
  double cell_ = 0.0;
  std::array<std::vector<cplx>, 2> proj_;
  std::vector<cplx> roots_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
};

}  // namespace detail

/**
 * ε-net over a gate set: every distinct (modulo global phase, up to δ)
 * product of at most `max_length` generators, shortest word first.
 *
 * Entries are stored breadth-first: by length, then lexicographically by
 * generator index. The identity (empty word) is entry 0.
 */
class Net {
 public:
  static Net build(GateSet gateset, std::size_t max_length, double dedupe_tol = kDefaultDedupeTol,
                   std::size_t max_entries = kDefaultMaxNetEntries) {
    if (max_length < 1) throw ValidationError("build_net: max length must be at least 1");
    Net net(std::move(gateset), max_length, dedupe_tol);
    detail::DedupeIndex index(net.dim(), dedupe_tol);
    net.push(index, NetEntry{{}, CMatrix::identity(net.dim())});
    std::vector<std::size_t> frontier{0};
    for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
      std::vector<std::size_t> next;
      for (std::size_t parent : frontier) {
        for (std::size_t g = 0; g < net.gateset_.size(); ++g) {
          CMatrix m = net.gateset_.matrix(g) * net.entries_[parent].matrix;
          if (index.find(m, net.entries_)) continue;
          Sequence seq = net.entries_[parent].seq;
          seq.push_back(g);
          next.push_back(net.entries_.size());
          net.push(index, NetEntry{std::move(seq), std::move(m)});
          if (net.entries_.size() > max_entries) {
            throw CapExceeded("build_net: more than " + std::to_string(max_entries) + " entries");
          }
        }
      }
      frontier = std::move(next);
    }
    return net;
  }

  /**
   * Reassembles a net from stored entries (e.g. a cache file), re-checking
   * that each matrix matches its word, that words respect the length bound,
   * and that no two entries lie within δ of each other.
   */
  static Net from_entries(GateSet gateset, std::size_t max_length, double dedupe_tol, std::vector<NetEntry> entries,
                          double tol = kUnitaryTol) {
    Net net(std::move(gateset), max_length, dedupe_tol);
    detail::DedupeIndex index(net.dim(), dedupe_tol);
    std::size_t prev_len = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto& e = entries[i];
      const std::string where = "net entry " + std::to_string(i);
      if (e.length() > max_length) throw ValidationError(where + ": word longer than max length");
      if (e.length() < prev_len) throw ValidationError(where + ": entries not in breadth-first order");
      prev_len = e.length();
      for (std::size_t g : e.seq)
        if (g >= net.gateset_.size()) throw ValidationError(where + ": unknown generator index");
      if (e.matrix.dim() != net.dim()) throw ValidationError(where + ": matrix dimension mismatch");
      if (max_abs_diff(net.gateset_.evaluate(e.seq), e.matrix) > tol) {
        throw ValidationError(where + ": stored matrix does not match its word");
      }
      if (auto dup = index.find(e.matrix, net.entries_)) {
        throw ValidationError(where + ": within dedupe tolerance of entry " + std::to_string(*dup));
      }
      net.push(index, std::move(e));
    }
    return net;
  }

  const GateSet& gateset() const { return gateset_; }
  std::size_t max_length() const { return max_length_; }
  double dedupe_tol() const { return dedupe_tol_; }
  std::size_t dim() const { return gateset_.dim(); }
  const std::vector<NetEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entry count per word length 0..max_length.
  std::vector<std::size_t> count_by_length() const {
    std::vector<std::size_t> counts(max_length_ + 1, 0);
    for (const auto& e : entries_) ++counts[e.length()];
    return counts;
  }

  /// |tr(E_i† u)| for every entry, read from a contiguous copy of the matrices.
  void overlaps(const CMatrix& u, std::vector<double>& out) const {
    const std::size_t n = dim() * dim();
    out.resize(entries_.size());
    const cplx* base = flat_.data();
    const auto target = u.entries();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      cplx t = 0.0;
      const cplx* m = base + i * n;
      for (std::size_t k = 0; k < n; ++k) t += std::conj(m[k]) * target[k];
      out[i] = std::abs(t);
    }
  }

 private:
  Net(GateSet gateset, std::size_t max_length, double dedupe_tol)
      : gateset_(std::move(gateset)), max_length_(max_length), dedupe_tol_(dedupe_tol) {}

  void push(detail::DedupeIndex& index, NetEntry e) {
    index.insert(e.matrix, entries_.size());
    flat_.insert(flat_.end(), e.matrix.entries().begin(), e.matrix.entries().end());
    entries_.push_back(std::move(e));
  }

  GateSet gateset_;
  std::size_t max_length_;
  double dedupe_tol_;
  std::vector<NetEntry> entries_;
  std::vector<cplx> flat_;
};

inline Net build_net(GateSet gateset, std::size_t max_length, double dedupe_tol = kDefaultDedupeTol,
                     std::size_t max_entries = kDefaultMaxNetEntries) {
  return Net::build(std::move(gateset), max_length, dedupe_tol, max_entries);
}

struct NetMatch {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Distances closer than this are treated as ties.
inline constexpr double kTieTol = 1e-12;

/**
 * Entry minimizing the phase-invariant distance to `u`. Ties go to the
 * shorter word, then to the lexicographically smaller one, which is the
 * same as the lower entry index.
 */
inline NetMatch nearest(const Net& net, const CMatrix& u) {
  if (net.empty()) throw ValidationError("nearest: empty net");
  if (u.dim() != net.dim()) throw DimensionError("nearest: target dimension does not match the net");
  std::vector<double> ov;
  net.overlaps(u, ov);

  if (net.dim() == 2) {
    // For 2x2 unitaries the distance is monotone decreasing in |tr(a†b)|.
    std::size_t best = 0;
    for (std::size_t i = 1; i < ov.size(); ++i)
      if (ov[i] > ov[best] + 1e-15) best = i;
    return {best, unitary_distance(net.entries()[best].matrix, u)};
  }

  std::vector<std::size_t> order(ov.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ov[a] > ov[b]; });
  NetMatch best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i : order) {
    // The bound loses ~1e-8 to cancellation; keep slack.
    if (distance_lower_bound(ov[i], net.dim()) - 1e-7 > best.distance + kTieTol) break;
    const double d = unitary_distance(net.entries()[i].matrix, u);
    if (d < best.distance - kTieTol || (d <= best.distance + kTieTol && i < best.index)) best = {i, d};
  }
  return best;
}

/// Indices of the `count` entries closest to `u`, closest first.
inline std::vector<std::size_t> nearest_k(const Net& net, const CMatrix& u, std::size_t count) {
  if (net.empty()) throw ValidationError("nearest: empty net");
  if (u.dim() != net.dim()) throw DimensionError("nearest: target dimension does not match the net");
  std::vector<double> ov;
  net.overlaps(u, ov);
  std::vector<std::size_t> order(ov.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    [&](std::size_t a, std::size_t b) { return ov[a] > ov[b] || (ov[a] == ov[b] && a < b); });
  order.resize(count);
  return order;
}

}  // namespace threbase::sk
