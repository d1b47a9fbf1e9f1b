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

// Superchannel fixtures shared by the unit tests and the acceptance binary.

#pragma once

#include <Eigen/SVD>

#include "choikit/channel.hpp"
#include "choikit/superchannel.hpp"
#include "oracles.hpp"

namespace fixture {

using choikit::ChoiRep;
using choikit::KrausRep;
using choikit::SuperchannelChoi;
using choikit::SuperchannelDims;
using choikit::SystemList;
using oracle::Matrix;

/// J^{theta(e)} by explicit index sums over B1 and A2.
inline Matrix link_apply(const SuperchannelChoi& theta, const Matrix& je) {
  const SuperchannelDims& d = theta.dims();
  const std::size_t a1 = d.a1.dim, a2 = d.a2.dim, b1 = d.b1.dim, b2 = d.b2.dim;
  const oracle::Dims jd{a1, a2, b1, b2}, ed{b1, a2}, od{a1, b2};
  const Matrix& j = theta.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(a1 * b2),
                            static_cast<Eigen::Index>(a1 * b2));
  for (std::size_t r = 0; r < a1 * b2; ++r) {
    for (std::size_t c = 0; c < a1 * b2; ++c) {
      const auto x = oracle::digits(r, od), y = oracle::digits(c, od);
      for (std::size_t s = 0; s < b1 * a2; ++s) {
        for (std::size_t t = 0; t < b1 * a2; ++t) {
          const auto u = oracle::digits(s, ed), v = oracle::digits(t, ed);
          const auto row = oracle::compose({x[0], u[1], u[0], x[1]}, jd);
          const auto col = oracle::compose({y[0], v[1], v[0], y[1]}, jd);
          out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
              j(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
              je(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
        }
      }
    }
  }
  return out;
}

/// Rank of Tr_{A2B2} J^theta computed with a plain SVD.
inline std::size_t memory_rank(const SuperchannelChoi& theta, double rtol = 1e-9) {
  const SuperchannelDims& d = theta.dims();
  const Matrix m = oracle::partial_trace(theta.matrix(), {d.a1.dim, d.a2.dim, d.b1.dim, d.b2.dim},
                                         {false, true, false, true});
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rtol * s(0)) ++r;
  }
  return r;
}

/// Pre copies the computational basis of A1 into E1 and B1; post discards E1
/// and passes A2 to B2.
inline SuperchannelChoi basis_copy_superchannel(std::size_t d = 2) {
  const auto di = static_cast<Eigen::Index>(d);
  Matrix v = Matrix::Zero(di * di, di);
  for (Eigen::Index i = 0; i < di; ++i) v(i * di + i, i) = 1.0;
  const KrausRep pre({v}, SystemList{{"A1", d}}, SystemList{{"E1", d}, {"B1", d}});
  std::vector<Matrix> post_ops;
  for (Eigen::Index e = 0; e < di; ++e) {
    Matrix k = Matrix::Zero(di, di * di);
    for (Eigen::Index a = 0; a < di; ++a) k(a, e * di + a) = 1.0;
    post_ops.push_back(k);
  }
  const KrausRep post(post_ops, SystemList{{"E1", d}, {"A2", d}}, SystemList{{"B2", d}});
  return choikit::superchannel_from_parts(choikit::choi_from_kraus(pre),
                                          choikit::choi_from_kraus(post));
}

/// diag(1, -1, 0, ...), traceless.
inline Matrix z_like(std::size_t d) {
  Matrix z = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  z(0, 0) = 1.0;
  if (d > 1) z(1, 1) = -1.0;
  return z;
}

/// Breaks complete positivity only (needs d_A1, d_B1 >= 2).
inline Matrix cp_violation(const SuperchannelChoi& theta) {
  const SuperchannelDims& d = theta.dims();
  const Matrix p = oracle::kron(
      oracle::kron(oracle::kron(z_like(d.a1.dim), Matrix::Identity(static_cast<Eigen::Index>(d.a2.dim),
                                                                   static_cast<Eigen::Index>(d.a2.dim))),
                   z_like(d.b1.dim)),
      Matrix::Identity(static_cast<Eigen::Index>(d.b2.dim), static_cast<Eigen::Index>(d.b2.dim)));
  const double t = 2.0 * theta.matrix().norm() + 1.0;
  return theta.matrix() + t * p;
}

/// Breaks trace preservation only.
inline Matrix tp_violation(const SuperchannelChoi& theta) { return 2.0 * theta.matrix(); }

/// Mixes in Gamma_{A1B2} (x) Gamma_{A2B1}, which signals from A2 to B1. Needs
/// d_A1 = d_B2 and d_A2 = d_B1.
inline Matrix ns_violation(const SuperchannelChoi& theta) {
  const SuperchannelDims& d = theta.dims();
  const Matrix g1 = choikit::gamma_operator(d.a1, d.b2).matrix();
  const Matrix g2 = choikit::gamma_operator(d.a2, d.b1).matrix();
  // kron order is A1 B2 A2 B1; move to A1 A2 B1 B2.
  const Matrix back = oracle::permute(oracle::kron(g1, g2), {d.a1.dim, d.b2.dim, d.a2.dim, d.b1.dim},
                                      {0, 2, 3, 1});
  return 0.5 * theta.matrix() + 0.5 * back;
}

}  // namespace fixture
