// Copyright 2026 The choikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choikit/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace choikit {

Matrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Column-major fill order keeps the stream consumption fixed.
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Matrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols) {
    throw InvalidArgument("an isometry needs at least as many rows as columns");
  }
  const Matrix g = random_ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  // Absorb the phases of R's diagonal so the distribution is Haar.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_unitary(std::size_t d, Rng& rng) { return random_isometry(d, d, rng); }

LabeledOperator random_state(const SystemList& systems, Rng& rng) {
  const std::size_t d = systems.total_dim();
  const Matrix g = random_ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return LabeledOperator::square(0.5 * (rho + rho.adjoint()), systems);
}

LabeledOperator random_pure_state(const SystemList& systems, Rng& rng) {
  const Matrix psi = random_ginibre(systems.total_dim(), 1, rng).normalized();
  return LabeledOperator::square(psi * psi.adjoint(), systems);
}

std::vector<LabeledOperator> random_povm(const SystemList& systems,
                                         std::size_t n, Rng& rng) {
  if (n < 1) throw InvalidArgument("a POVM needs at least one outcome");
  const std::size_t d = systems.total_dim();
  std::vector<Matrix> effects;
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(d),
                              static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix g = random_ginibre(d, d, rng);
    effects.push_back(g * g.adjoint());
    total += effects.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (total + total.adjoint()));
  const Matrix inv_sqrt = solver.operatorInverseSqrt();
  std::vector<LabeledOperator> out;
  out.reserve(n);
  for (const auto& e : effects) {
    Matrix m = inv_sqrt * e * inv_sqrt;
    out.push_back(LabeledOperator::square(0.5 * (m + m.adjoint()), systems));
  }
  return out;
}

}  // namespace choikit
