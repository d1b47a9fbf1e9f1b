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

#include "choikit/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <set>

namespace choikit {

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += ",";
    out += l;
  }
  return "[" + out + "]";
}

// One tensor leg of a reindexed operator, described by where its index lands
// in the source matrix.
struct LegSpec {
  std::size_t dim;
  std::size_t row_stride;
  std::size_t col_stride;
};

// Source (row, col) offsets for every composite index over `legs`, row-major.
struct Offsets {
  std::vector<std::size_t> row{0};
  std::vector<std::size_t> col{0};
};

Offsets expand(const std::vector<LegSpec>& legs) {
  Offsets off;
  for (const auto& leg : legs) {
    Offsets next;
    next.row.clear();
    next.col.clear();
    next.row.reserve(off.row.size() * leg.dim);
    next.col.reserve(off.col.size() * leg.dim);
    for (std::size_t k = 0; k < off.row.size(); ++k) {
      for (std::size_t d = 0; d < leg.dim; ++d) {
        next.row.push_back(off.row[k] + d * leg.row_stride);
        next.col.push_back(off.col[k] + d * leg.col_stride);
      }
    }
    off = std::move(next);
  }
  return off;
}

std::vector<std::size_t> strides(const SystemList& systems) {
  std::vector<std::size_t> s(systems.size());
  std::size_t acc = 1;
  for (std::size_t i = systems.size(); i-- > 0;) {
    s[i] = acc;
    acc *= systems[i].dim;
  }
  return s;
}

// Leg views of the source operator.
class Legs {
 public:
  explicit Legs(const LabeledOperator& m)
      : m_(m),
        out_strides_(strides(m.out_systems())),
        in_strides_(strides(m.in_systems())) {}

  LegSpec out_leg(const std::string& label) const {
    auto i = m_.out_systems().index_of(label);
    if (!i) throw UnknownLabel("no output system named '" + label + "'");
    return {m_.out_systems()[*i].dim, out_strides_[*i], 0};
  }
  LegSpec in_leg(const std::string& label) const {
    auto i = m_.in_systems().index_of(label);
    if (!i) throw UnknownLabel("no input system named '" + label + "'");
    return {m_.in_systems()[*i].dim, 0, in_strides_[*i]};
  }

 private:
  const LabeledOperator& m_;
  std::vector<std::size_t> out_strides_;
  std::vector<std::size_t> in_strides_;
};

// Builds a new operator whose (r, c) entry is the source entry at the sum of
// the row-leg and column-leg offsets. Every reindexing operation funnels here.
LabeledOperator regroup(
    const LabeledOperator& m, const std::vector<LegSpec>& out_legs,
    const std::vector<LegSpec>& in_legs, SystemList out_sys,
    SystemList in_sys) {
  const Offsets r = expand(out_legs);
  const Offsets c = expand(in_legs);
  const Matrix& src = m.matrix();
  Matrix dst(static_cast<Eigen::Index>(r.row.size()),
             static_cast<Eigen::Index>(c.row.size()));
  for (std::size_t j = 0; j < c.row.size(); ++j) {
    for (std::size_t i = 0; i < r.row.size(); ++i) {
      dst(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          src(static_cast<Eigen::Index>(r.row[i] + c.row[j]),
              static_cast<Eigen::Index>(r.col[i] + c.col[j]));
    }
  }
  return LabeledOperator(std::move(dst), std::move(in_sys), std::move(out_sys));
}

std::string fresh_label(std::string label, const SystemList& taken) {
  while (taken.contains(label)) label += "'";
  return label;
}

void require_unique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw InvalidArgument(std::string(what) + ": repeated label in " +
                          join_labels(labels));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SystemList

SystemList::SystemList(std::initializer_list<System> systems)
    : SystemList(std::vector<System>(systems)) {}

SystemList::SystemList(std::vector<System> systems)
    : systems_(std::move(systems)) {
  std::set<std::string> seen;
  for (const auto& s : systems_) {
    if (s.dim < 1) {
      throw InvalidArgument("system '" + s.label + "' has dimension 0");
    }
    if (!seen.insert(s.label).second) {
      throw InvalidArgument("duplicate system label '" + s.label + "'");
    }
  }
}

std::size_t SystemList::total_dim() const {
  std::size_t d = 1;
  for (const auto& s : systems_) d *= s.dim;
  return d;
}

std::vector<std::string> SystemList::labels() const {
  std::vector<std::string> out;
  out.reserve(systems_.size());
  for (const auto& s : systems_) out.push_back(s.label);
  return out;
}

bool SystemList::contains(const std::string& label) const {
  return index_of(label).has_value();
}

std::optional<std::size_t> SystemList::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < systems_.size(); ++i) {
    if (systems_[i].label == label) return i;
  }
  return std::nullopt;
}

const System& SystemList::at(const std::string& label) const {
  auto i = index_of(label);
  if (!i) throw UnknownLabel("no system named '" + label + "'");
  return systems_[*i];
}

SystemList SystemList::without(const std::vector<std::string>& labels) const {
  std::vector<System> out;
  for (const auto& s : systems_) {
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) {
      out.push_back(s);
    }
  }
  return SystemList(std::move(out));
}

SystemList SystemList::select(const std::vector<std::string>& labels) const {
  std::vector<System> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(at(l));
  return SystemList(std::move(out));
}

SystemList SystemList::concat(const SystemList& other) const {
  std::vector<System> out = systems_;
  out.insert(out.end(), other.systems_.begin(), other.systems_.end());
  return SystemList(std::move(out));
}

// ---------------------------------------------------------------------------
// LabeledOperator

LabeledOperator::LabeledOperator(
    Matrix matrix, SystemList in_systems, SystemList out_systems)
    : matrix_(std::move(matrix)),
      in_(std::move(in_systems)),
      out_(std::move(out_systems)) {
  if (static_cast<std::size_t>(matrix_.rows()) != out_.total_dim() ||
      static_cast<std::size_t>(matrix_.cols()) != in_.total_dim()) {
    throw DimensionMismatch(
        "matrix is " + std::to_string(matrix_.rows()) + "x" +
        std::to_string(matrix_.cols()) + " but systems require " +
        std::to_string(out_.total_dim()) + "x" +
        std::to_string(in_.total_dim()));
  }
  for (const auto& s : in_) {
    if (auto j = out_.index_of(s.label); j && out_[*j].dim != s.dim) {
      throw DimensionMismatch("system '" + s.label +
                              "' has different input and output dimensions");
    }
  }
}

LabeledOperator LabeledOperator::square(Matrix matrix, SystemList systems) {
  return LabeledOperator(std::move(matrix), systems, systems);
}

LabeledOperator LabeledOperator::column(Vector v, SystemList systems) {
  return LabeledOperator(Matrix(std::move(v)), SystemList{}, std::move(systems));
}

LabeledOperator LabeledOperator::identity(SystemList systems) {
  const auto d = static_cast<Eigen::Index>(systems.total_dim());
  return square(Matrix::Identity(d, d), std::move(systems));
}

LabeledOperator LabeledOperator::zero(SystemList in_systems, SystemList out_systems) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(out_systems.total_dim()),
                          static_cast<Eigen::Index>(in_systems.total_dim()));
  return LabeledOperator(std::move(m), std::move(in_systems), std::move(out_systems));
}

LabeledOperator LabeledOperator::scalar(Complex value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return LabeledOperator(std::move(m), {}, {});
}

LabeledOperator LabeledOperator::adjoint() const {
  return LabeledOperator(matrix_.adjoint(), out_, in_);
}

LabeledOperator LabeledOperator::conjugate() const {
  return LabeledOperator(matrix_.conjugate(), in_, out_);
}

LabeledOperator LabeledOperator::transpose() const {
  return LabeledOperator(matrix_.transpose(), out_, in_);
}

LabeledOperator& LabeledOperator::operator+=(const LabeledOperator& other) {
  if (in_ != other.in_ || out_ != other.out_) {
    throw DimensionMismatch("operands of + have different systems");
  }
  matrix_ += other.matrix_;
  return *this;
}

LabeledOperator& LabeledOperator::operator-=(const LabeledOperator& other) {
  if (in_ != other.in_ || out_ != other.out_) {
    throw DimensionMismatch("operands of - have different systems");
  }
  matrix_ -= other.matrix_;
  return *this;
}

LabeledOperator& LabeledOperator::operator*=(Complex factor) {
  matrix_ *= factor;
  return *this;
}

LabeledOperator operator*(const LabeledOperator& a, const LabeledOperator& b) {
  if (a.in_systems() != b.out_systems()) {
    throw DimensionMismatch(
        "cannot compose: inputs " + join_labels(a.in_systems().labels()) +
        " do not match outputs " + join_labels(b.out_systems().labels()));
  }
  return LabeledOperator(a.matrix() * b.matrix(), b.in_systems(), a.out_systems());
}

// ---------------------------------------------------------------------------
// SpectralDecomposition

LabeledOperator SpectralDecomposition::reconstruct() const {
  Matrix m = eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
             eigenvectors.adjoint();
  return LabeledOperator::square(std::move(m), systems);
}

double SpectralDecomposition::min_eigenvalue() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.minCoeff();
}

// ---------------------------------------------------------------------------
// Construction

LabeledOperator gamma(std::size_t d, const std::string& first,
                      const std::string& second) {
  if (d < 1) throw InvalidArgument("gamma requires d >= 1");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = 1.0;
  return LabeledOperator::column(std::move(v), SystemList{{first, d}, {second, d}});
}

LabeledOperator gamma_operator(const System& a, const System& b) {
  if (a.dim != b.dim) {
    throw DimensionMismatch("gamma_operator needs equal dimensions");
  }
  LabeledOperator g = gamma(a.dim, a.label, b.label);
  return LabeledOperator::square(g.matrix() * g.matrix().adjoint(),
                                 g.out_systems());
}

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
  SystemList in = a.in_systems().concat(b.in_systems());
  SystemList out = a.out_systems().concat(b.out_systems());
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix m(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      m.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return LabeledOperator(std::move(m), std::move(in), std::move(out));
}

LabeledOperator relabel(const LabeledOperator& m,
                        const std::map<std::string, std::string>& names) {
  auto rename = [&](const SystemList& list) {
    std::vector<System> out;
    for (const auto& s : list) {
      auto it = names.find(s.label);
      out.push_back({it == names.end() ? s.label : it->second, s.dim});
    }
    return SystemList(std::move(out));
  };
  return LabeledOperator(m.matrix(), rename(m.in_systems()),
                         rename(m.out_systems()));
}

// ---------------------------------------------------------------------------
// Reindexing

LabeledOperator vec(const LabeledOperator& m) {
  const Legs legs(m);
  std::vector<LegSpec> out_legs;
  std::vector<System> out_sys;
  SystemList taken = m.out_systems();
  for (const auto& s : m.in_systems()) {
    out_legs.push_back(legs.in_leg(s.label));
    System copy{fresh_label(s.label, taken), s.dim};
    taken = taken.concat(SystemList{copy});
    out_sys.push_back(copy);
  }
  for (const auto& s : m.out_systems()) {
    out_legs.push_back(legs.out_leg(s.label));
    out_sys.push_back(s);
  }
  return regroup(m, out_legs, {}, SystemList(std::move(out_sys)), {});
}

LabeledOperator mat(const LabeledOperator& v, const SystemList& split) {
  if (!v.is_column()) throw DimensionMismatch("mat expects a column vector");
  const SystemList& sys = v.out_systems();
  if (split.size() > sys.size()) {
    throw DimensionMismatch("split has more systems than the vector");
  }
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (split[i].dim != sys[i].dim) {
      throw DimensionMismatch("split dimension of '" + split[i].label +
                              "' does not match vector system '" +
                              sys[i].label + "'");
    }
  }
  const Legs legs(v);
  std::vector<LegSpec> in_legs, out_legs;
  std::vector<System> out_sys;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (i < split.size()) {
      in_legs.push_back(legs.out_leg(sys[i].label));
    } else {
      out_legs.push_back(legs.out_leg(sys[i].label));
      out_sys.push_back(sys[i]);
    }
  }
  return regroup(v, out_legs, in_legs, SystemList(std::move(out_sys)), split);
}

LabeledOperator partial_vec(const LabeledOperator& m, const std::string& label) {
  const Legs legs(m);
  const System& moved = m.in_systems().at(label);
  std::vector<LegSpec> out_legs{legs.in_leg(label)};
  std::vector<System> out_sys{{fresh_label(label, m.out_systems()), moved.dim}};
  for (const auto& s : m.out_systems()) {
    out_legs.push_back(legs.out_leg(s.label));
    out_sys.push_back(s);
  }
  std::vector<LegSpec> in_legs;
  for (const auto& s : m.in_systems()) {
    if (s.label != label) in_legs.push_back(legs.in_leg(s.label));
  }
  return regroup(m, out_legs, in_legs, SystemList(std::move(out_sys)),
                 m.in_systems().without({label}));
}

LabeledOperator partial_mat(const LabeledOperator& m, const std::string& label) {
  const Legs legs(m);
  const System& moved = m.out_systems().at(label);
  SystemList rest_in = m.in_systems();
  std::vector<LegSpec> in_legs{legs.out_leg(label)};
  std::vector<System> in_sys{{fresh_label(label, rest_in), moved.dim}};
  for (const auto& s : rest_in) {
    in_legs.push_back(legs.in_leg(s.label));
    in_sys.push_back(s);
  }
  std::vector<LegSpec> out_legs;
  for (const auto& s : m.out_systems()) {
    if (s.label != label) out_legs.push_back(legs.out_leg(s.label));
  }
  return regroup(m, out_legs, in_legs, m.out_systems().without({label}),
                 SystemList(std::move(in_sys)));
}

LabeledOperator permute_systems(const LabeledOperator& m,
                                const std::vector<std::string>& in_order,
                                const std::vector<std::string>& out_order) {
  auto check = [](const SystemList& have, const std::vector<std::string>& order,
                  const char* side) {
    std::vector<std::string> a = have.labels();
    std::vector<std::string> b = order;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      throw InvalidArgument(std::string(side) + " order " + join_labels(order) +
                            " is not a permutation of " +
                            join_labels(have.labels()));
    }
  };
  check(m.in_systems(), in_order, "input");
  check(m.out_systems(), out_order, "output");
  const Legs legs(m);
  std::vector<LegSpec> in_legs, out_legs;
  for (const auto& l : in_order) in_legs.push_back(legs.in_leg(l));
  for (const auto& l : out_order) out_legs.push_back(legs.out_leg(l));
  return regroup(m, out_legs, in_legs, m.out_systems().select(out_order),
                 m.in_systems().select(in_order));
}

LabeledOperator permute_systems(const LabeledOperator& m,
                                const std::vector<std::string>& order) {
  return permute_systems(m, order, order);
}

// ---------------------------------------------------------------------------
// Contractions

namespace {

void require_square_on(const LabeledOperator& m,
                       const std::vector<std::string>& labels,
                       const char* what) {
  for (const auto& l : labels) {
    auto i = m.in_systems().index_of(l);
    auto o = m.out_systems().index_of(l);
    if (!i && !o) throw UnknownLabel(std::string(what) + ": no system '" + l + "'");
    if (!i || !o) {
      throw DimensionMismatch(std::string(what) + ": system '" + l +
                              "' is not present on both sides");
    }
  }
}

}  // namespace

LabeledOperator partial_trace(const LabeledOperator& m,
                              const std::vector<std::string>& labels) {
  require_unique(labels, "partial_trace");
  require_square_on(m, labels, "partial_trace");
  const Legs legs(m);
  std::vector<LegSpec> out_legs, in_legs, traced;
  for (const auto& s : m.out_systems()) {
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) {
      out_legs.push_back(legs.out_leg(s.label));
    }
  }
  for (const auto& s : m.in_systems()) {
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) {
      in_legs.push_back(legs.in_leg(s.label));
    }
  }
  for (const auto& l : labels) {
    LegSpec o = legs.out_leg(l);
    LegSpec i = legs.in_leg(l);
    traced.push_back({o.dim, o.row_stride, i.col_stride});
  }
  const Offsets r = expand(out_legs);
  const Offsets c = expand(in_legs);
  const Offsets t = expand(traced);
  const Matrix& src = m.matrix();
  Matrix dst(static_cast<Eigen::Index>(r.row.size()),
             static_cast<Eigen::Index>(c.row.size()));
  for (std::size_t j = 0; j < c.row.size(); ++j) {
    for (std::size_t i = 0; i < r.row.size(); ++i) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < t.row.size(); ++k) {
        acc += src(static_cast<Eigen::Index>(r.row[i] + c.row[j] + t.row[k]),
                   static_cast<Eigen::Index>(r.col[i] + c.col[j] + t.col[k]));
      }
      dst(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return LabeledOperator(std::move(dst), m.in_systems().without(labels),
                         m.out_systems().without(labels));
}

Complex trace(const LabeledOperator& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("trace of a non-square matrix");
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < m.matrix().rows(); ++i) acc += m.matrix()(i, i);
  return acc;
}

LabeledOperator partial_transpose(const LabeledOperator& m,
                                  const std::vector<std::string>& labels) {
  require_unique(labels, "partial_transpose");
  require_square_on(m, labels, "partial_transpose");
  const Legs legs(m);
  auto transposed = [&](const std::string& l) {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
  };
  std::vector<LegSpec> out_legs, in_legs;
  for (const auto& s : m.out_systems()) {
    out_legs.push_back(transposed(s.label) ? legs.in_leg(s.label)
                                           : legs.out_leg(s.label));
  }
  for (const auto& s : m.in_systems()) {
    in_legs.push_back(transposed(s.label) ? legs.out_leg(s.label)
                                          : legs.in_leg(s.label));
  }
  return regroup(m, out_legs, in_legs, m.out_systems(), m.in_systems());
}

// ---------------------------------------------------------------------------
// Spectral utilities

double frobenius_norm(const LabeledOperator& m) { return m.matrix().norm(); }

bool is_hermitian(const LabeledOperator& m, double tol) {
  if (!m.is_square()) return false;
  const double scale = m.matrix().norm();
  return (m.matrix() - m.matrix().adjoint()).norm() <= tol * scale;
}

SpectralDecomposition psd_decompose(const LabeledOperator& m, double tol,
                                    bool require_psd) {
  if (!m.is_square()) {
    throw DimensionMismatch("psd_decompose needs identical input and output systems");
  }
  if (!is_hermitian(m, tol)) {
    throw NotHermitian("operator is not Hermitian within relative tolerance " +
                       std::to_string(tol));
  }
  const Matrix herm = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw NotHermitian("eigensolver failed to converge");
  }
  const Eigen::Index n = herm.rows();
  SpectralDecomposition out;
  out.clip_tol = tol;
  out.systems = m.out_systems();
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    double lambda = solver.eigenvalues()(n - 1 - k);
    if (lambda < -tol && require_psd) {
      throw NotPSD("eigenvalue " + std::to_string(lambda) + " below -" +
                   std::to_string(tol));
    }
    if (lambda < 0.0 && lambda >= -tol) lambda = 0.0;
    out.eigenvalues(k) = lambda;
    Vector v = solver.eigenvectors().col(n - 1 - k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(v(i));
      if (mag > tol) {
        v *= std::conj(v(i)) / mag;
        v(i) = mag;
        break;
      }
    }
    out.eigenvectors.col(k) = v;
  }
  return out;
}

std::size_t numeric_rank(const LabeledOperator& m, double rtol) {
  if (m.matrix().size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m.matrix());
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rtol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace choikit
