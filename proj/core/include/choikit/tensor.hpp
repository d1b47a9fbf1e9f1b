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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choikit/errors.hpp"

namespace choikit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance used for Hermiticity, positivity and trace checks.
inline constexpr double kDefaultTol = 1e-9;
// Relative cutoff (against the largest singular value) for numerical rank.
inline constexpr double kDefaultRankRtol = 1e-9;

struct System {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const System&, const System&) = default;
};

/// Ordered list of labeled tensor factors. The composite basis index is
/// row-major over the list: the leftmost system is the most significant.
class SystemList {
 public:
  SystemList() = default;
  SystemList(std::initializer_list<System> systems);
  explicit SystemList(std::vector<System> systems);

  std::size_t size() const { return systems_.size(); }
  bool empty() const { return systems_.empty(); }
  const System& operator[](std::size_t i) const { return systems_[i]; }
  auto begin() const { return systems_.begin(); }
  auto end() const { return systems_.end(); }
  const std::vector<System>& systems() const { return systems_; }

  /// Product of all dims; 1 for the empty list.
  std::size_t total_dim() const;
  std::vector<std::string> labels() const;
  bool contains(const std::string& label) const;
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Throws UnknownLabel if absent.
  const System& at(const std::string& label) const;

  SystemList without(const std::vector<std::string>& labels) const;
  /// Systems in the order given by `labels`; throws unless it is a subset.
  SystemList select(const std::vector<std::string>& labels) const;
  SystemList concat(const SystemList& other) const;

  friend bool operator==(const SystemList&, const SystemList&) = default;

 private:
  std::vector<System> systems_;
};

/// Dense complex matrix mapping the composite space of `in_systems` to that of
/// `out_systems`. Row index is the output composite index.
///
/// A label may appear in both lists; it then names one Hilbert space seen from
/// both sides (Choi-type objects, states, square operators) and must carry the
/// same dimension on each side.
class LabeledOperator {
 public:
  LabeledOperator() = default;
  LabeledOperator(Matrix matrix, SystemList in_systems, SystemList out_systems);

  /// Operator with identical input and output systems.
  static LabeledOperator square(Matrix matrix, SystemList systems);
  /// Column vector (no input systems).
  static LabeledOperator column(Vector v, SystemList systems);
  static LabeledOperator identity(SystemList systems);
  static LabeledOperator zero(SystemList in_systems, SystemList out_systems);
  static LabeledOperator scalar(Complex value);

  const Matrix& matrix() const { return matrix_; }
  const SystemList& in_systems() const { return in_; }
  const SystemList& out_systems() const { return out_; }

  std::size_t rows() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix_.cols()); }
  bool is_square() const { return in_ == out_; }
  bool is_column() const { return in_.empty(); }
  bool is_scalar() const { return in_.empty() && out_.empty(); }

  LabeledOperator adjoint() const;
  LabeledOperator conjugate() const;
  /// Full transpose; swaps input and output systems.
  LabeledOperator transpose() const;

  LabeledOperator& operator+=(const LabeledOperator& other);
  LabeledOperator& operator-=(const LabeledOperator& other);
  LabeledOperator& operator*=(Complex factor);

  friend LabeledOperator operator+(LabeledOperator a, const LabeledOperator& b) {
    return a += b;
  }
  friend LabeledOperator operator-(LabeledOperator a, const LabeledOperator& b) {
    return a -= b;
  }
  friend LabeledOperator operator*(Complex s, LabeledOperator a) { return a *= s; }
  friend LabeledOperator operator*(LabeledOperator a, Complex s) { return a *= s; }
  /// Composition `a * b`; requires a.in_systems() == b.out_systems().
  friend LabeledOperator operator*(
      const LabeledOperator& a, const LabeledOperator& b);

 private:
  Matrix matrix_;
  SystemList in_;
  SystemList out_;
};

/// Eigendecomposition of a Hermitian operator. Eigenvalues are descending;
/// values in [-clip_tol, 0) are clipped to zero; each eigenvector's first
/// component of magnitude above clip_tol is real and positive.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
  double clip_tol = kDefaultTol;
  SystemList systems;

  /// Sum of eigenvalue-weighted projectors.
  LabeledOperator reconstruct() const;
  double min_eigenvalue() const;
};

// ---------------------------------------------------------------------------
// Construction

/// Unnormalized maximally entangled vector sum_i |ii> on (first, second).
LabeledOperator gamma(
    std::size_t d, const std::string& first = "A",
    const std::string& second = "A'");
/// |Gamma><Gamma| on a (x) b. The two systems must share a dimension.
LabeledOperator gamma_operator(const System& a, const System& b);

/// Tensor product; labels must be disjoint within each side.
LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator relabel(
    const LabeledOperator& m, const std::map<std::string, std::string>& names);

// ---------------------------------------------------------------------------
// Reindexing. None of these perform arithmetic on the entries.

/// Full vectorization. Inputs become the leading output systems; entry
/// (i, a) equals M[a, i]. A copy whose label collides with an output label is
/// renamed by appending primes.
LabeledOperator vec(const LabeledOperator& m);
/// Inverse of vec: the leading systems of the column `v` that match `split`
/// become inputs.
LabeledOperator mat(const LabeledOperator& v, const SystemList& split);
/// Moves input `label` to the front of the outputs.
LabeledOperator partial_vec(const LabeledOperator& m, const std::string& label);
/// Moves output `label` to the front of the inputs.
LabeledOperator partial_mat(const LabeledOperator& m, const std::string& label);
LabeledOperator permute_systems(
    const LabeledOperator& m, const std::vector<std::string>& in_order,
    const std::vector<std::string>& out_order);
/// Permutes a square operator on both sides with the same order.
LabeledOperator permute_systems(
    const LabeledOperator& m, const std::vector<std::string>& order);

// ---------------------------------------------------------------------------
// Contractions

/// Traces out each label. Every label must be present on both sides.
LabeledOperator partial_trace(
    const LabeledOperator& m, const std::vector<std::string>& labels);
Complex trace(const LabeledOperator& m);
LabeledOperator partial_transpose(
    const LabeledOperator& m, const std::vector<std::string>& labels);

// ---------------------------------------------------------------------------
// Spectral utilities

double frobenius_norm(const LabeledOperator& m);
/// ||M - M^dagger||_F <= tol * ||M||_F.
bool is_hermitian(const LabeledOperator& m, double tol = kDefaultTol);
/// Throws NotHermitian, and NotPSD when `require_psd` and an eigenvalue is
/// below -tol.
SpectralDecomposition psd_decompose(
    const LabeledOperator& m, double tol = kDefaultTol,
    bool require_psd = false);
/// Number of singular values above rtol times the largest one.
std::size_t numeric_rank(const LabeledOperator& m, double rtol = kDefaultRankRtol);

}  // namespace choikit
