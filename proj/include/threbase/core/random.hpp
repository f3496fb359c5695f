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
#include <random>

#include <Eigen/QR>

#include "threbase/core/matrix.hpp"

namespace threbase {

/// Haar-random unitary: QR of a complex Gaussian matrix, with R's diagonal
/// phases folded back into Q.
template <class Rng>
CMatrix haar_unitary(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = cplx(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < d; ++c) {
    const cplx rc = rmat(c, c);
    const double mag = std::abs(rc);
    q.col(c) *= mag > 0.0 ? rc / mag : cplx(1.0);
  }
  return CMatrix::from_eigen(q);
}

}  // namespace threbase
