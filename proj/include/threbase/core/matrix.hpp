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
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "threbase/core/errors.hpp"

namespace threbase {

using cplx = std::complex<double>;

/// Default tolerance for unitarity checks. Loose enough to absorb rounding
/// accumulated over ~1e4 matrix products in double precision.
inline constexpr double kUnitaryTol = 1e-10;

using RowMatrixXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/**
 * Dense complex square matrix whose dimension is a power of two.
 *
 * Entries are stored row-major. A default-constructed matrix is empty
 * (dimension 0) and is only useful as a placeholder.
 */
class CMatrix {
 public:
  CMatrix() = default;

  /// Zero matrix of the given dimension.
  explicit CMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) { check_dim(dim); }

  CMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
    check_dim(dim);
    if (entries_.size() != dim * dim) {
      throw DimensionError("CMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                           std::to_string(entries_.size()));
    }
  }

  /// Row-wise literal, e.g. `CMatrix{{0, 1}, {1, 0}}`.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    check_dim(dim_);
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw DimensionError("CMatrix: ragged row literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static CMatrix identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static CMatrix diagonal(std::initializer_list<cplx> diag) {
    return diagonal(std::span<const cplx>(diag.begin(), diag.size()));
  }

  static CMatrix from_eigen(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
    if (m.rows() != m.cols()) throw DimensionError("CMatrix: non-square Eigen matrix");
    CMatrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
  }

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  /// log2(dim).
  std::size_t num_qubits() const { return dim_ == 0 ? 0 : static_cast<std::size_t>(std::countr_zero(dim_)); }

  cplx operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  std::span<const cplx> entries() const { return entries_; }
  std::span<cplx> entries() { return entries_; }

  Eigen::Map<const RowMatrixXcd> eigen() const {
    const auto d = static_cast<Eigen::Index>(dim_);
    return Eigen::Map<const RowMatrixXcd>(entries_.data(), d, d);
  }

  bool is_unitary(double tol = kUnitaryTol) const;
  bool is_real(double tol = kUnitaryTol) const;

  CMatrix real_part() const {
    CMatrix out(dim_);
    std::transform(entries_.begin(), entries_.end(), out.entries_.begin(),
                   [](cplx z) { return cplx(z.real(), 0.0); });
    return out;
  }

  CMatrix imag_part() const {
    CMatrix out(dim_);
    std::transform(entries_.begin(), entries_.end(), out.entries_.begin(),
                   [](cplx z) { return cplx(z.imag(), 0.0); });
    return out;
  }

  CMatrix& operator*=(cplx s) {
    for (auto& z : entries_) z *= s;
    return *this;
  }

  friend CMatrix operator*(cplx s, CMatrix m) { return m *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "operator+");
    CMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
    return out;
  }

  friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "operator-");
    CMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

  static void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.dim_ != b.dim_) {
      throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim_) +
                           " vs " + std::to_string(b.dim_) + ")");
    }
  }

 private:
  static void check_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
      throw DimensionError("CMatrix: dimension " + std::to_string(dim) + " is not a power of two");
    }
  }

  std::size_t dim_ = 0;
  std::vector<cplx> entries_;
};

inline CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) out(c, r) = std::conj(m(r, c));
  return out;
}

inline CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  CMatrix::require_same_dim(a, b, "multiply");
  const std::size_t d = a.dim();
  CMatrix out(d);
  if (d <= 8) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx(0.0)) continue;
        for (std::size_t c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }
  RowMatrixXcd prod = a.eigen() * b.eigen();
  std::copy(prod.data(), prod.data() + d * d, out.entries().begin());
  return out;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return multiply(a, b); }

/// Kronecker product; `a` occupies the more significant qubits.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  CMatrix out(da * db);
  for (std::size_t r1 = 0; r1 < da; ++r1)
    for (std::size_t c1 = 0; c1 < da; ++c1) {
      const cplx s = a(r1, c1);
      if (s == cplx(0.0)) continue;
      for (std::size_t r2 = 0; r2 < db; ++r2)
        for (std::size_t c2 = 0; c2 < db; ++c2) out(r1 * db + r2, c1 * db + c2) = s * b(r2, c2);
    }
  return out;
}

/// ‖a − b‖_max.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix::require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

/// max |Im entry|.
inline double max_imag(const CMatrix& m) {
  double worst = 0.0;
  for (cplx z : m.entries()) worst = std::max(worst, std::abs(z.imag()));
  return worst;
}

/// ‖M†M − I‖_max.
inline double unitarity_defect(const CMatrix& m) {
  return max_abs_diff(adjoint(m) * m, CMatrix::identity(m.dim()));
}

inline bool CMatrix::is_unitary(double tol) const { return !empty() && unitarity_defect(*this) <= tol; }
inline bool CMatrix::is_real(double tol) const { return max_imag(*this) <= tol; }

inline cplx trace(const CMatrix& m) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

/// tr(a† b) without forming the product.
inline cplx trace_adjoint_product(const CMatrix& a, const CMatrix& b) {
  CMatrix::require_same_dim(a, b, "trace_adjoint_product");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) t += std::conj(a.entries()[i]) * b.entries()[i];
  return t;
}

}  // namespace threbase
