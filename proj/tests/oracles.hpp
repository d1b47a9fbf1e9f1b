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

// Brute-force reference implementations used by the tests. Everything here
// works on raw matrices and explicit multi-indices so it shares no code with
// the library's stride machinery.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

inline std::size_t product(const Dims& d) {
  std::size_t p = 1;
  for (auto x : d) p *= x;
  return p;
}

/// Row-major digits of `index` over `dims`.
inline std::vector<std::size_t> digits(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

inline std::size_t compose(const std::vector<std::size_t>& digit, const Dims& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digit[k];
  return index;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

inline Matrix random_density(std::size_t d, std::mt19937_64& rng) {
  const Matrix g = random_matrix(d, d, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

/// Square operator on `dims`; traces every factor flagged in `traced`.
inline Matrix partial_trace(const Matrix& m, const Dims& dims,
                            const std::vector<bool>& traced) {
  Dims kept;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!traced[k]) kept.push_back(dims[k]);
  }
  const std::size_t n = product(dims), nk = product(kept);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      bool diagonal = true;
      std::vector<std::size_t> kr, kc;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (traced[k]) {
          diagonal = diagonal && dr[k] == dc[k];
        } else {
          kr.push_back(dr[k]);
          kc.push_back(dc[k]);
        }
      }
      if (!diagonal) continue;
      out(static_cast<Eigen::Index>(compose(kr, kept)),
          static_cast<Eigen::Index>(compose(kc, kept))) +=
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Matrix partial_transpose(const Matrix& m, const Dims& dims,
                                const std::vector<bool>& flagged) {
  const std::size_t n = product(dims);
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      auto dr = digits(r, dims), dc = digits(c, dims);
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (flagged[k]) std::swap(dr[k], dc[k]);
      }
      out(static_cast<Eigen::Index>(compose(dr, dims)),
          static_cast<Eigen::Index>(compose(dc, dims))) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

/// New factor k is old factor perm[k].
inline Matrix permute(const Matrix& m, const Dims& dims, const std::vector<std::size_t>& perm) {
  Dims nd(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) nd[k] = dims[perm[k]];
  const std::size_t n = product(dims);
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      std::vector<std::size_t> nr(dims.size()), nc(dims.size());
      for (std::size_t k = 0; k < dims.size(); ++k) {
        nr[k] = dr[perm[k]];
        nc[k] = dc[perm[k]];
      }
      out(static_cast<Eigen::Index>(compose(nr, nd)),
          static_cast<Eigen::Index>(compose(nc, nd))) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return m;
}

inline Matrix unit(std::size_t d, std::size_t i, std::size_t j) {
  Matrix e = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return e;
}

using LinearMap = std::function<Matrix(const Matrix&)>;

/// sum_ij |i><j| (x) map(|i><j|).
inline Matrix choi(const LinearMap& map, std::size_t d_in) {
  Matrix out;
  for (std::size_t i = 0; i < d_in; ++i) {
    for (std::size_t j = 0; j < d_in; ++j) {
      const Matrix term = kron(unit(d_in, i, j), map(unit(d_in, i, j)));
      if (out.size() == 0) out = Matrix::Zero(term.rows(), term.cols());
      out += term;
    }
  }
  return out;
}

/// Action of the map with Choi operator j (input first) on rho, by index sums.
inline Matrix apply_choi(const Matrix& j, const Matrix& rho, std::size_t d_out) {
  const auto d_in = static_cast<std::size_t>(rho.rows());
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_out));
  for (std::size_t a = 0; a < d_in; ++a) {
    for (std::size_t ap = 0; ap < d_in; ++ap) {
      for (std::size_t b = 0; b < d_out; ++b) {
        for (std::size_t bp = 0; bp < d_out; ++bp) {
          out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(bp)) +=
              rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) *
              j(static_cast<Eigen::Index>(a * d_out + b),
                static_cast<Eigen::Index>(ap * d_out + bp));
        }
      }
    }
  }
  return out;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace oracle
