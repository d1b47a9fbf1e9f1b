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

#include "choikit/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "choikit/random.hpp"

namespace choikit {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

// Column-major flattening matches vec(): entry (i, a) of the vector is M[a, i].
Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unflatten(const Vector& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

std::string env_label(const SystemList& taken) {
  std::string label = "E";
  while (taken.contains(label)) label += "'";
  return label;
}

void require_input_dim(const SystemList& input, const LabeledOperator& rho) {
  if (rho.rows() != rho.cols() || rho.rows() != input.total_dim()) {
    throw DimensionMismatch("state is " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()) +
                            " but the channel input has dimension " +
                            std::to_string(input.total_dim()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Records

ChoiRep::ChoiRep(Matrix j, SystemList input, SystemList output)
    : ChoiRep(LabeledOperator::square(std::move(j), input.concat(output)),
              input, output) {}

ChoiRep::ChoiRep(LabeledOperator op, SystemList input, SystemList output)
    : op_(std::move(op)), input_(std::move(input)), output_(std::move(output)) {
  const SystemList joint = input_.concat(output_);
  if (op_.in_systems() != joint || op_.out_systems() != joint) {
    throw DimensionMismatch("Choi operator must be square on input ++ output");
  }
}

KrausRep::KrausRep(std::vector<Matrix> ops, SystemList input, SystemList output) {
  if (ops.empty()) throw InvalidArgument("a Kraus set needs at least one operator");
  ops_.reserve(ops.size());
  for (auto& k : ops) ops_.emplace_back(std::move(k), input, output);
}

KrausRep::KrausRep(std::vector<LabeledOperator> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw InvalidArgument("a Kraus set needs at least one operator");
  for (const auto& k : ops_) {
    if (k.in_systems() != ops_.front().in_systems() ||
        k.out_systems() != ops_.front().out_systems()) {
      throw DimensionMismatch("Kraus operators act between different systems");
    }
  }
}

StinespringRep::StinespringRep(Matrix v, SystemList input, SystemList output,
                               System env)
    : v_(std::move(v), input, output.concat(SystemList{env})),
      input_(std::move(input)),
      output_(std::move(output)),
      env_(std::move(env)) {}

LiouvilleRep::LiouvilleRep(Matrix l, SystemList input, SystemList output)
    : l_(std::move(l), vec(LabeledOperator::identity(input)).out_systems(),
         vec(LabeledOperator::identity(output)).out_systems()),
      input_(std::move(input)),
      output_(std::move(output)) {}

// ---------------------------------------------------------------------------
// Conversions

ChoiRep choi_from_kraus(const KrausRep& k) {
  const SystemList joint = k.input().concat(k.output());
  const auto d = idx(joint.total_dim());
  Matrix j = Matrix::Zero(d, d);
  for (const auto& op : k.ops()) {
    const Vector v = flatten(op.matrix());
    j.noalias() += v * v.adjoint();
  }
  return ChoiRep(std::move(j), k.input(), k.output());
}

KrausRep kraus_from_choi(const ChoiRep& c, double tol, double rank_rtol) {
  const SpectralDecomposition eig = psd_decompose(c.op(), tol, true);
  const std::size_t r = numeric_rank(c.op(), rank_rtol);
  const Index rows = idx(c.d_out());
  const Index cols = idx(c.d_in());
  std::vector<Matrix> ops;
  if (r == 0) {
    ops.push_back(Matrix::Zero(rows, cols));
  } else {
    for (std::size_t i = 0; i < r; ++i) {
      const double lambda = eig.eigenvalues(idx(i));
      const Vector v = std::sqrt(lambda) * eig.eigenvectors.col(idx(i));
      ops.push_back(unflatten(v, rows, cols));
    }
  }
  return KrausRep(std::move(ops), c.input(), c.output());
}

double kraus_completeness_deviation(const KrausRep& k) {
  const auto d = idx(k.input().total_dim());
  Matrix s = -Matrix::Identity(d, d);
  for (const auto& op : k.ops()) s.noalias() += op.matrix().adjoint() * op.matrix();
  return s.norm();
}

StinespringRep stinespring_from_kraus(const KrausRep& k, double tol) {
  const double dev = kraus_completeness_deviation(k);
  if (dev > tol) {
    throw NotTP("Kraus completeness deviation " + std::to_string(dev) +
                " exceeds " + std::to_string(tol));
  }
  const Index r = idx(k.size());
  const Index d_out = idx(k.output().total_dim());
  const Index d_in = idx(k.input().total_dim());
  Matrix v(d_out * r, d_in);
  for (Index i = 0; i < r; ++i) {
    const Matrix& op = k.ops()[static_cast<std::size_t>(i)].matrix();
    for (Index b = 0; b < d_out; ++b) v.row(b * r + i) = op.row(b);
  }
  const System env{env_label(k.input().concat(k.output())),
                   static_cast<std::size_t>(r)};
  return StinespringRep(std::move(v), k.input(), k.output(), env);
}

KrausRep kraus_from_stinespring(const StinespringRep& s, double tol) {
  const Matrix& v = s.isometry().matrix();
  const double dev = (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).norm();
  if (dev > tol) {
    throw NotIsometry("V^dagger V deviates from the identity by " +
                      std::to_string(dev));
  }
  const Index r = idx(s.env().dim);
  const Index d_out = idx(s.output().total_dim());
  std::vector<Matrix> ops;
  for (Index i = 0; i < r; ++i) {
    Matrix k(d_out, v.cols());
    for (Index b = 0; b < d_out; ++b) k.row(b) = v.row(b * r + i);
    ops.push_back(std::move(k));
  }
  return KrausRep(std::move(ops), s.input(), s.output());
}

ChoiRep choi_from_stinespring(const StinespringRep& s) {
  const Matrix& v = s.isometry().matrix();
  const Index r = idx(s.env().dim);
  const Index d_out = idx(s.output().total_dim());
  const Index d = idx(s.input().total_dim()) * d_out;
  Matrix j = Matrix::Zero(d, d);
  for (Index i = 0; i < r; ++i) {
    Matrix k(d_out, v.cols());
    for (Index b = 0; b < d_out; ++b) k.row(b) = v.row(b * r + i);
    const Vector x = flatten(k);
    j.noalias() += x * x.adjoint();
  }
  return ChoiRep(std::move(j), s.input(), s.output());
}

LiouvilleRep liouville_from_kraus(const KrausRep& k) {
  const auto& first = k.ops().front().matrix();
  Matrix l = Matrix::Zero(first.rows() * first.rows(), first.cols() * first.cols());
  for (const auto& op : k.ops()) {
    const Matrix& x = op.matrix();
    const Matrix xc = x.conjugate();
    for (Index i = 0; i < x.rows(); ++i) {
      for (Index j = 0; j < x.cols(); ++j) {
        l.block(i * x.rows(), j * x.cols(), x.rows(), x.cols()) += xc(i, j) * x;
      }
    }
  }
  return LiouvilleRep(std::move(l), k.input(), k.output());
}

ChoiRep choi_from_liouville(const LiouvilleRep& l) {
  const Index d_in = idx(l.input().total_dim());
  const Index d_out = idx(l.output().total_dim());
  const Matrix& src = l.matrix();
  Matrix j(d_in * d_out, d_in * d_out);
  // J[(a, b), (a', b')] = L[(b', b), (a', a)].
  for (Index a = 0; a < d_in; ++a) {
    for (Index b = 0; b < d_out; ++b) {
      for (Index ap = 0; ap < d_in; ++ap) {
        for (Index bp = 0; bp < d_out; ++bp) {
          j(a * d_out + b, ap * d_out + bp) = src(bp * d_out + b, ap * d_in + a);
        }
      }
    }
  }
  return ChoiRep(std::move(j), l.input(), l.output());
}

LiouvilleRep liouville_from_choi(const ChoiRep& c) {
  const Index d_in = idx(c.d_in());
  const Index d_out = idx(c.d_out());
  const Matrix& src = c.matrix();
  Matrix l(d_out * d_out, d_in * d_in);
  for (Index a = 0; a < d_in; ++a) {
    for (Index b = 0; b < d_out; ++b) {
      for (Index ap = 0; ap < d_in; ++ap) {
        for (Index bp = 0; bp < d_out; ++bp) {
          l(bp * d_out + b, ap * d_in + a) = src(a * d_out + b, ap * d_out + bp);
        }
      }
    }
  }
  return LiouvilleRep(std::move(l), c.input(), c.output());
}

ChoiRep to_choi(const AnyChannel& ch, double tol) {
  (void)tol;
  return std::visit(
      [](const auto& rep) -> ChoiRep {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, ChoiRep>) {
          return rep;
        } else if constexpr (std::is_same_v<T, KrausRep>) {
          return choi_from_kraus(rep);
        } else if constexpr (std::is_same_v<T, StinespringRep>) {
          return choi_from_stinespring(rep);
        } else {
          return choi_from_liouville(rep);
        }
      },
      ch);
}

KrausRep to_kraus(const AnyChannel& ch, double tol, double rank_rtol) {
  if (const auto* k = std::get_if<KrausRep>(&ch)) return *k;
  if (const auto* s = std::get_if<StinespringRep>(&ch)) {
    return kraus_from_stinespring(*s, tol);
  }
  return kraus_from_choi(to_choi(ch, tol), tol, rank_rtol);
}

StinespringRep to_stinespring(const AnyChannel& ch, double tol, double rank_rtol) {
  if (const auto* s = std::get_if<StinespringRep>(&ch)) return *s;
  return stinespring_from_kraus(to_kraus(ch, tol, rank_rtol), tol);
}

LiouvilleRep to_liouville(const AnyChannel& ch, double tol, double rank_rtol) {
  (void)rank_rtol;
  if (const auto* l = std::get_if<LiouvilleRep>(&ch)) return *l;
  if (const auto* k = std::get_if<KrausRep>(&ch)) return liouville_from_kraus(*k);
  return liouville_from_choi(to_choi(ch, tol));
}

// ---------------------------------------------------------------------------
// Checks and action

ChannelValidityReport validate_channel(const ChoiRep& c, double tol) {
  ChannelValidityReport report;
  report.tol = tol;
  const Matrix& j = c.matrix();
  report.hermiticity_deviation = (j - j.adjoint()).norm();
  report.hermitian = report.hermiticity_deviation <= tol * std::max(1.0, j.norm());
  const Matrix herm = 0.5 * (j + j.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().size() ? solver.eigenvalues()(0) : 0.0;
  report.cp = report.min_eigenvalue >= -tol;
  const LabeledOperator marginal = partial_trace(c.op(), c.output().labels());
  const auto d = idx(c.d_in());
  report.tp_deviation = (marginal.matrix() - Matrix::Identity(d, d)).norm();
  report.tp = report.tp_deviation <= tol;
  return report;
}

LabeledOperator apply_channel(const AnyChannel& ch, const LabeledOperator& rho) {
  return std::visit(
      [&](const auto& rep) -> LabeledOperator {
        using T = std::decay_t<decltype(rep)>;
        require_input_dim(rep.input(), rho);
        const Matrix& x = rho.matrix();
        const Index d_out = idx(rep.output().total_dim());
        Matrix out = Matrix::Zero(d_out, d_out);
        if constexpr (std::is_same_v<T, ChoiRep>) {
          const Matrix& j = rep.matrix();
          for (Index a = 0; a < x.rows(); ++a) {
            for (Index ap = 0; ap < x.cols(); ++ap) {
              out += x(a, ap) * j.block(a * d_out, ap * d_out, d_out, d_out);
            }
          }
        } else if constexpr (std::is_same_v<T, KrausRep>) {
          for (const auto& k : rep.ops()) {
            out.noalias() += k.matrix() * x * k.matrix().adjoint();
          }
        } else if constexpr (std::is_same_v<T, StinespringRep>) {
          const Matrix& v = rep.isometry().matrix();
          const Matrix big = v * x * v.adjoint();
          const Index r = idx(rep.env().dim);
          for (Index b = 0; b < d_out; ++b) {
            for (Index bp = 0; bp < d_out; ++bp) {
              Complex acc = 0.0;
              for (Index e = 0; e < r; ++e) acc += big(b * r + e, bp * r + e);
              out(b, bp) = acc;
            }
          }
        } else {
          const Vector y = rep.matrix() * flatten(x);
          out = unflatten(y, d_out, d_out);
        }
        return LabeledOperator::square(std::move(out), rep.output());
      },
      ch);
}

LabeledOperator link_product(const LabeledOperator& m, const LabeledOperator& n) {
  if (!m.is_square() || !n.is_square()) {
    throw InvalidArgument("link_product needs operators with identical input "
                          "and output systems");
  }
  std::vector<std::string> shared, m_rest, n_rest;
  for (const auto& s : m.out_systems()) {
    if (auto j = n.out_systems().index_of(s.label)) {
      if (n.out_systems()[*j].dim != s.dim) {
        throw DimensionMismatch("shared system '" + s.label +
                                "' has different dimensions");
      }
      shared.push_back(s.label);
    } else {
      m_rest.push_back(s.label);
    }
  }
  for (const auto& s : n.out_systems()) {
    if (!m.out_systems().contains(s.label)) n_rest.push_back(s.label);
  }
  std::vector<std::string> m_order = m_rest;
  m_order.insert(m_order.end(), shared.begin(), shared.end());
  std::vector<std::string> n_order = shared;
  n_order.insert(n_order.end(), n_rest.begin(), n_rest.end());
  const LabeledOperator mp = permute_systems(m, m_order);
  const LabeledOperator np = permute_systems(n, n_order);

  const SystemList x_sys = m.out_systems().select(m_rest);
  const SystemList y_sys = n.out_systems().select(n_rest);
  const SystemList c_sys = m.out_systems().select(shared);
  const Index dx = idx(x_sys.total_dim());
  const Index dy = idx(y_sys.total_dim());
  const Index dc = idx(c_sys.total_dim());
  const Matrix& a = mp.matrix();
  const Matrix& b = np.matrix();

  // R[(x,y),(x',y')] = sum_{c,c'} M[(x,c'),(x',c)] N[(c',y),(c,y')].
  Matrix r = Matrix::Zero(dx * dy, dx * dy);
  Matrix mblock(dx, dx);
  for (Index c = 0; c < dc; ++c) {
    for (Index cp = 0; cp < dc; ++cp) {
      for (Index x = 0; x < dx; ++x) {
        for (Index xp = 0; xp < dx; ++xp) mblock(x, xp) = a(x * dc + cp, xp * dc + c);
      }
      const auto nblock = b.block(cp * dy, c * dy, dy, dy);
      for (Index x = 0; x < dx; ++x) {
        for (Index xp = 0; xp < dx; ++xp) {
          const Complex w = mblock(x, xp);
          if (w == Complex(0.0)) continue;
          r.block(x * dy, xp * dy, dy, dy) += w * nblock;
        }
      }
    }
  }
  return LabeledOperator::square(std::move(r), x_sys.concat(y_sys));
}

ChoiRep compose_channels(const ChoiRep& e2, const ChoiRep& e1) {
  if (e1.d_out() != e2.d_in()) {
    throw DimensionMismatch("cannot compose: first channel outputs dimension " +
                            std::to_string(e1.d_out()) +
                            " but second channel expects " +
                            std::to_string(e2.d_in()));
  }
  // Collapse each side to one composite system under private labels; the
  // composite index is unchanged by the collapse.
  const std::string in = "#in", link = "#link", out = "#out";
  const LabeledOperator j1(e1.matrix(),
                           SystemList{{in, e1.d_in()}, {link, e1.d_out()}},
                           SystemList{{in, e1.d_in()}, {link, e1.d_out()}});
  const LabeledOperator j2(e2.matrix(),
                           SystemList{{link, e2.d_in()}, {out, e2.d_out()}},
                           SystemList{{link, e2.d_in()}, {out, e2.d_out()}});
  LabeledOperator joined = link_product(j1, j2);
  // Output labels that clash with input labels are primed.
  std::vector<System> outs;
  SystemList taken = e1.input();
  for (const auto& s : e2.output()) {
    std::string label = s.label;
    while (taken.contains(label)) label += "'";
    taken = taken.concat(SystemList{{label, s.dim}});
    outs.push_back({label, s.dim});
  }
  SystemList output(std::move(outs));
  return ChoiRep(joined.matrix(), e1.input(), output);
}

LabeledOperator generalized_choi(const ChoiRep& c, ChoiVariant f, ChoiVariant g) {
  const bool tf = f == ChoiVariant::kTranspose;
  const bool tg = g == ChoiVariant::kTranspose;
  // Transposing the argument transposes the input copy of J; the outer
  // transpose flips every leg, so (T, T) leaves only the output copy.
  std::vector<std::string> labels;
  if (tg && !tf) labels = c.input().labels();
  if (tf && !tg) labels = c.input().concat(c.output()).labels();
  if (tf && tg) labels = c.output().labels();
  if (labels.empty()) return c.op();
  return partial_transpose(c.op(), labels);
}

ChoiRep generalized_choi_inverse(const LabeledOperator& j, ChoiVariant f,
                                 ChoiVariant g, const SystemList& input,
                                 const SystemList& output) {
  const ChoiRep wrapped(j, input, output);
  return ChoiRep(generalized_choi(wrapped, f, g), input, output);
}

// ---------------------------------------------------------------------------
// Generators

KrausRep random_channel(const SystemList& input, const SystemList& output,
                        std::size_t kraus_rank, std::uint64_t seed) {
  const std::size_t d_in = input.total_dim();
  const std::size_t d_out = output.total_dim();
  if (kraus_rank < 1 || kraus_rank > d_in * d_out) {
    throw InvalidArgument("kraus_rank " + std::to_string(kraus_rank) +
                          " outside [1, d_in*d_out]");
  }
  if (kraus_rank * d_out < d_in) {
    throw InvalidArgument("kraus_rank " + std::to_string(kraus_rank) +
                          " too small: a trace-preserving map needs "
                          "kraus_rank*d_out >= d_in");
  }
  Rng rng(seed);
  const Matrix v = random_isometry(kraus_rank * d_out, d_in, rng);
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < kraus_rank; ++i) {
    ops.push_back(v.block(idx(i * d_out), 0, idx(d_out), idx(d_in)));
  }
  return KrausRep(std::move(ops), input, output);
}

KrausRep random_channel(std::size_t d_in, std::size_t d_out,
                        std::size_t kraus_rank, std::uint64_t seed) {
  return random_channel(SystemList{{"A", d_in}}, SystemList{{"B", d_out}},
                        kraus_rank, seed);
}

KrausRep unitary_channel(const Matrix& u, const SystemList& input,
                         const SystemList& output) {
  return KrausRep({u}, input, output);
}

KrausRep identity_channel(const SystemList& input, const SystemList& output) {
  if (input.total_dim() != output.total_dim()) {
    throw DimensionMismatch("identity channel needs equal input and output dimension");
  }
  const auto d = idx(input.total_dim());
  return KrausRep({Matrix::Identity(d, d)}, input, output);
}

ChoiRep trace_and_prepare(const SystemList& input, const LabeledOperator& sigma) {
  if (!sigma.is_square()) throw DimensionMismatch("prepared state must be square");
  const LabeledOperator j = kron(LabeledOperator::identity(input), sigma);
  return ChoiRep(j, input, sigma.out_systems());
}

}  // namespace choikit
