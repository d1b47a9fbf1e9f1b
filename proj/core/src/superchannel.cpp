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

#include "choikit/superchannel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "choikit/random.hpp"

namespace choikit {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unflatten(const Vector& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron_matrix(const Matrix& x, const Matrix& y) {
  Matrix m(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      m.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return m;
}

Matrix unit(std::size_t d, std::size_t i, std::size_t j) {
  Matrix e = Matrix::Zero(idx(d), idx(d));
  e(idx(i), idx(j)) = 1.0;
  return e;
}

std::string fresh(std::string label, const SystemList& taken) {
  while (taken.contains(label)) label += "'";
  return label;
}

// Collapses a contiguous group of systems into one slot.
System slot(const SystemList& group, const std::string& fallback) {
  if (group.size() == 1) return group[0];
  return {fallback, group.total_dim()};
}

std::vector<std::string> shared_labels(const SystemList& a, const SystemList& b) {
  std::vector<std::string> out;
  for (const auto& s : a) {
    if (b.contains(s.label)) out.push_back(s.label);
  }
  return out;
}

// Link product of the two parts over their shared memory, without validation.
SuperchannelChoi join_parts(const ChoiRep& pre, const ChoiRep& post) {
  const std::vector<std::string> memory = shared_labels(pre.output(), post.input());
  for (const auto& l : memory) {
    if (pre.output().at(l).dim != post.input().at(l).dim) {
      throw DimensionMismatch("memory system '" + l + "' has different dimensions");
    }
  }
  const LabeledOperator joined = link_product(pre.op(), post.op());
  SuperchannelDims dims;
  dims.a1 = slot(pre.input(), "A1");
  dims.b1 = slot(pre.output().without(memory), "B1");
  dims.a2 = slot(post.input().without(memory), "A2");
  dims.b2 = slot(post.output(), "B2");
  // Link product order: pre's remaining systems (A1, B1), then post's (A2, B2).
  const LabeledOperator grouped = LabeledOperator::square(
      joined.matrix(), SystemList{dims.a1, dims.b1, dims.a2, dims.b2});
  return SuperchannelChoi(
      permute_systems(grouped, dims.choi_order().labels()), dims);
}

LabeledOperator relabel_state(const System& sys, const LabeledOperator& rho) {
  if (rho.rows() != sys.dim || rho.cols() != sys.dim) {
    throw DimensionMismatch("state dimension does not match system '" + sys.label + "'");
  }
  return LabeledOperator::square(rho.matrix(), SystemList{sys});
}

// J^e (x) rho regrouped to B1 A1 A2.
LabeledOperator q_argument(const SuperchannelDims& dims, const ChoiRep& e,
                           const LabeledOperator& rho) {
  const LabeledOperator x = kron(input_channel_op(dims, e), relabel_state(dims.a1, rho));
  return permute_systems(x, {dims.b1.label, dims.a1.label, dims.a2.label});
}

template <typename StateMap>
ChoiRep choi_by_basis(const SuperchannelDims& dims, StateMap&& map) {
  const std::size_t da = dims.a1.dim;
  const Index db = idx(dims.b2.dim);
  Matrix j = Matrix::Zero(idx(da) * db, idx(da) * db);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t ap = 0; ap < da; ++ap) {
      const LabeledOperator basis = LabeledOperator::square(unit(da, a, ap),
                                                            SystemList{dims.a1});
      j.block(idx(a) * db, idx(ap) * db, db, db) = map(basis).matrix();
    }
  }
  return ChoiRep(std::move(j), SystemList{dims.a1}, SystemList{dims.b2});
}

std::string describe(const SuperchannelValidityReport& r) {
  std::ostringstream os;
  os << "cp=" << r.cp << " (min eigenvalue " << r.min_eigenvalue << "), tp=" << r.tp
     << " (deviation " << r.tp_deviation << "), ns=" << r.ns << " (deviation "
     << r.ns_deviation << ")";
  return os.str();
}

}  // namespace

SuperchannelDims make_dims(std::size_t a1, std::size_t a2, std::size_t b1,
                           std::size_t b2) {
  return {{"A1", a1}, {"A2", a2}, {"B1", b1}, {"B2", b2}};
}

SuperchannelChoi::SuperchannelChoi(Matrix j, SuperchannelDims dims)
    : SuperchannelChoi(LabeledOperator::square(std::move(j), dims.choi_order()),
                       dims) {}

SuperchannelChoi::SuperchannelChoi(LabeledOperator op, SuperchannelDims dims)
    : op_(std::move(op)), dims_(std::move(dims)) {
  const SystemList order = dims_.choi_order();
  if (op_.in_systems() != order || op_.out_systems() != order) {
    throw DimensionMismatch("superchannel Choi operator must be square on A1 A2 B1 B2");
  }
}

// ---------------------------------------------------------------------------
// Construction and checks

SuperchannelChoi superchannel_from_parts(const ChoiRep& pre, const ChoiRep& post,
                                         double tol) {
  const ChannelValidityReport rp = validate_channel(pre, tol);
  if (!rp.valid()) {
    throw InvalidChannel("pre-processing part is not a channel (min eigenvalue " +
                         std::to_string(rp.min_eigenvalue) + ", tp deviation " +
                         std::to_string(rp.tp_deviation) + ")");
  }
  const ChannelValidityReport rq = validate_channel(post, tol);
  if (!rq.valid()) {
    throw InvalidChannel("post-processing part is not a channel (min eigenvalue " +
                         std::to_string(rq.min_eigenvalue) + ", tp deviation " +
                         std::to_string(rq.tp_deviation) + ")");
  }
  return join_parts(pre, post);
}

SuperchannelValidityReport validate_superchannel(const LabeledOperator& op,
                                                 const SuperchannelDims& dims,
                                                 double tol) {
  const SuperchannelChoi theta(op, dims);
  SuperchannelValidityReport report;
  report.tol = tol;
  const Matrix& j = op.matrix();
  report.hermiticity_deviation = (j - j.adjoint()).norm();
  report.hermitian = report.hermiticity_deviation <= tol * std::max(1.0, j.norm());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (j + j.adjoint()),
                                               Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues()(0);
  report.cp = report.min_eigenvalue >= -tol;

  const LabeledOperator tp = partial_trace(op, {dims.b1.label, dims.b2.label});
  const auto d_in = idx(dims.a1.dim * dims.a2.dim);
  report.tp_deviation = (tp.matrix() - Matrix::Identity(d_in, d_in)).norm();
  report.tp = report.tp_deviation <= tol;

  const LabeledOperator lhs = partial_trace(op, {dims.b2.label});
  const LabeledOperator marginal = partial_trace(op, {dims.a2.label, dims.b2.label});
  LabeledOperator rhs = kron(marginal, LabeledOperator::identity(SystemList{dims.a2}));
  rhs *= Complex(1.0 / static_cast<double>(dims.a2.dim));
  rhs = permute_systems(rhs, lhs.out_systems().labels());
  report.ns_deviation = (lhs.matrix() - rhs.matrix()).norm();
  report.ns = report.ns_deviation <= tol;
  return report;
}

SuperchannelValidityReport validate_superchannel(const SuperchannelChoi& theta,
                                                 double tol) {
  return validate_superchannel(theta.op(), theta.dims(), tol);
}

LabeledOperator input_channel_op(const SuperchannelDims& dims, const ChoiRep& e) {
  if (e.d_in() != dims.b1.dim || e.d_out() != dims.a2.dim) {
    throw DimensionMismatch("input channel must map dimension " +
                            std::to_string(dims.b1.dim) + " to " +
                            std::to_string(dims.a2.dim));
  }
  return LabeledOperator::square(e.matrix(), SystemList{dims.b1, dims.a2});
}

ChoiRep apply_to_channel(const SuperchannelChoi& theta, const ChoiRep& e, double tol) {
  const LabeledOperator je = input_channel_op(theta.dims(), e);
  const ChannelValidityReport r = validate_channel(e, tol);
  if (!r.valid()) {
    throw InvalidChannel("input is not a channel (min eigenvalue " +
                         std::to_string(r.min_eigenvalue) + ", tp deviation " +
                         std::to_string(r.tp_deviation) + ")");
  }
  const LabeledOperator out = link_product(theta.op(), je);
  return ChoiRep(out, SystemList{theta.dims().a1}, SystemList{theta.dims().b2});
}

// ---------------------------------------------------------------------------
// Gour operator

LabeledOperator gour_from_choi(const SuperchannelChoi& theta) {
  return permute_systems(theta.op(), theta.dims().gour_order().labels());
}

LabeledOperator gour_from_basis_maps(const SuperchannelChoi& theta) {
  const SuperchannelDims& d = theta.dims();
  const SystemList order = d.gour_order();
  LabeledOperator g = LabeledOperator::zero(order, order);
  for (std::size_t i = 0; i < d.b1.dim; ++i) {
    for (std::size_t j = 0; j < d.b1.dim; ++j) {
      for (std::size_t k = 0; k < d.a2.dim; ++k) {
        for (std::size_t l = 0; l < d.a2.dim; ++l) {
          const LabeledOperator e_ijkl = kron(
              LabeledOperator::square(unit(d.b1.dim, i, j), SystemList{d.b1}),
              LabeledOperator::square(unit(d.a2.dim, k, l), SystemList{d.a2}));
          g += kron(e_ijkl, link_product(theta.op(), e_ijkl));
        }
      }
    }
  }
  return g;
}

SuperchannelChoi choi_from_gour(const LabeledOperator& g, const SuperchannelDims& dims) {
  const SystemList order = dims.gour_order();
  if (g.in_systems() != order || g.out_systems() != order) {
    throw DimensionMismatch("Gour operator must be square on B1 A2 A1 B2");
  }
  return SuperchannelChoi(permute_systems(g, dims.choi_order().labels()), dims);
}

// ---------------------------------------------------------------------------
// Representations

SuperKrausFamily n_operators(const SuperchannelChoi& theta, double tol,
                             double rank_rtol) {
  const SuperchannelDims& d = theta.dims();
  const SpectralDecomposition eig = psd_decompose(theta.op(), tol, true);
  const std::size_t r = std::max<std::size_t>(1, numeric_rank(theta.op(), rank_rtol));
  SuperKrausFamily family;
  family.dims = d;
  const SystemList order = d.choi_order();
  const SystemList inputs{d.a1, d.a2};
  for (std::size_t i = 0; i < r; ++i) {
    const double lambda = eig.eigenvalues(idx(i));
    const Vector v = std::sqrt(lambda) * eig.eigenvectors.col(idx(i));
    LabeledOperator n = mat(LabeledOperator::column(v, order), inputs);
    family.q_ops.push_back(partial_mat(n, d.b1.label));
    family.k_ops.push_back(partial_mat(partial_vec(n, d.a1.label), d.b1.label));
    family.n_ops.push_back(std::move(n));
  }
  return family;
}

LabeledOperator q_completeness(const SuperKrausFamily& family) {
  LabeledOperator acc = family.q_ops.front().adjoint() * family.q_ops.front();
  for (std::size_t i = 1; i < family.size(); ++i) {
    acc += family.q_ops[i].adjoint() * family.q_ops[i];
  }
  return partial_trace(acc, {family.dims.b1.label});
}

ChoiRep kraus_apply(const SuperKrausFamily& family, const ChoiRep& e) {
  const LabeledOperator je = input_channel_op(family.dims, e);
  const SystemList out{family.dims.a1, family.dims.b2};
  LabeledOperator acc = LabeledOperator::zero(out, out);
  for (const auto& k : family.k_ops) acc += k * je * k.adjoint();
  return ChoiRep(acc, SystemList{family.dims.a1}, SystemList{family.dims.b2});
}

LabeledOperator q_apply(const SuperKrausFamily& family, const ChoiRep& e,
                        const LabeledOperator& rho) {
  const LabeledOperator x = q_argument(family.dims, e, rho);
  const SystemList out{family.dims.b2};
  LabeledOperator acc = LabeledOperator::zero(out, out);
  for (const auto& q : family.q_ops) acc += q * x * q.adjoint();
  return acc;
}

ChoiRep q_apply_choi(const SuperKrausFamily& family, const ChoiRep& e) {
  return choi_by_basis(family.dims, [&](const LabeledOperator& rho) {
    return q_apply(family, e, rho);
  });
}

LabeledOperator super_stinespring(const SuperKrausFamily& family) {
  const SuperchannelDims& d = family.dims;
  const Index r = idx(family.size());
  const Index db2 = idx(d.b2.dim);
  const LabeledOperator& q0 = family.q_ops.front();
  Matrix v(db2 * r, idx(q0.cols()));
  for (Index i = 0; i < r; ++i) {
    const Matrix& q = family.q_ops[static_cast<std::size_t>(i)].matrix();
    for (Index b = 0; b < db2; ++b) v.row(b * r + i) = q.row(b);
  }
  const System env{fresh("E", d.choi_order()), family.size()};
  return LabeledOperator(std::move(v), q0.in_systems(), SystemList{d.b2, env});
}

LabeledOperator super_stinespring_apply(const LabeledOperator& vs,
                                        const SuperchannelDims& dims,
                                        const ChoiRep& e, const LabeledOperator& rho) {
  const LabeledOperator x = q_argument(dims, e, rho);
  const LabeledOperator y = vs * x * vs.adjoint();
  return partial_trace(y, {vs.out_systems()[vs.out_systems().size() - 1].label});
}

ChoiRep super_stinespring_apply_choi(const LabeledOperator& vs,
                                     const SuperchannelDims& dims, const ChoiRep& e) {
  return choi_by_basis(dims, [&](const LabeledOperator& rho) {
    return super_stinespring_apply(vs, dims, e, rho);
  });
}

LabeledOperator super_liouville(const SuperKrausFamily& family) {
  const SuperchannelDims& d = family.dims;
  const SystemList in = vec(LabeledOperator::identity(SystemList{d.b1, d.a2})).out_systems();
  const SystemList out = vec(LabeledOperator::identity(SystemList{d.a1, d.b2})).out_systems();
  LabeledOperator acc = LabeledOperator::zero(in, out);
  for (const auto& k : family.k_ops) {
    acc += LabeledOperator(kron_matrix(k.matrix().conjugate(), k.matrix()), in, out);
  }
  return acc;
}

ChoiRep super_liouville_apply(const LabeledOperator& k, const SuperchannelDims& dims,
                              const ChoiRep& e) {
  const LabeledOperator je = input_channel_op(dims, e);
  const Index d = idx(dims.a1.dim * dims.b2.dim);
  if (k.matrix().rows() != d * d || k.matrix().cols() != je.matrix().size()) {
    throw DimensionMismatch("Liouville superoperator does not match the slots");
  }
  const Vector y = k.matrix() * flatten(je.matrix());
  return ChoiRep(unflatten(y, d, d), SystemList{dims.a1}, SystemList{dims.b2});
}

// ---------------------------------------------------------------------------
// Realization

ChoiRep Realization::pre() const { return choi_from_kraus(KrausRep({v})); }

ChoiRep Realization::post() const {
  const SystemList& outs = w.out_systems();
  const Index db2 = idx(outs[1].dim);
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < outs[0].dim; ++i) {
    ops.push_back(w.matrix().block(idx(i) * db2, 0, db2, w.matrix().cols()));
  }
  return choi_from_kraus(KrausRep(std::move(ops), w.in_systems(), SystemList{outs[1]}));
}

FThetaChannel f_theta_channel(const SuperKrausFamily& family, double tol,
                              double rank_rtol) {
  const SuperchannelDims& d = family.dims;
  const Index db1 = idx(d.b1.dim);
  const SystemList a1{d.a1};
  Matrix j = Matrix::Zero(idx(d.a1.dim) * db1, idx(d.a1.dim) * db1);
  for (std::size_t a = 0; a < d.a1.dim; ++a) {
    for (std::size_t ap = 0; ap < d.a1.dim; ++ap) {
      const LabeledOperator x = kron(LabeledOperator::square(unit(d.a1.dim, a, ap), a1),
                                     LabeledOperator::identity(SystemList{d.b2}));
      LabeledOperator y = family.k_ops.front().adjoint() * x * family.k_ops.front();
      for (std::size_t i = 1; i < family.size(); ++i) {
        y += family.k_ops[i].adjoint() * x * family.k_ops[i];
      }
      const LabeledOperator f = partial_trace(y, {d.a2.label});
      j.block(idx(a) * db1, idx(ap) * db1, db1, db1) =
          f.matrix() / static_cast<double>(d.a2.dim);
    }
  }
  ChoiRep choi(std::move(j), a1, SystemList{d.b1});
  KrausRep kraus = kraus_from_choi(choi, tol, rank_rtol);
  const std::size_t rank = numeric_rank(choi.op(), rank_rtol);
  return {std::move(choi), std::move(kraus), rank};
}

MemoryCostReport memory_cost_report(const SuperchannelChoi& theta, double tol,
                                    double rank_rtol) {
  const SuperKrausFamily family = n_operators(theta, tol, rank_rtol);
  const SuperchannelDims& d = family.dims;
  LabeledOperator acc;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const LabeledOperator v = vec(family.k_ops[i].adjoint());
    LabeledOperator term = LabeledOperator::square(v.matrix() * v.matrix().adjoint(),
                                                   v.out_systems());
    if (i == 0) {
      acc = std::move(term);
    } else {
      acc += term;
    }
  }
  const LabeledOperator reduced = partial_trace(acc, {d.a2.label, d.b2.label});
  MemoryCostReport report;
  report.eq_rank = numeric_rank(reduced, rank_rtol);
  report.f_theta_rank = f_theta_channel(family, tol, rank_rtol).rank;
  return report;
}

std::size_t memory_cost(const SuperchannelChoi& theta, double tol, double rank_rtol) {
  return memory_cost_report(theta, tol, rank_rtol).eq_rank;
}

Realization realize(const SuperchannelChoi& theta, double tol, double rank_rtol) {
  const SuperchannelValidityReport check = validate_superchannel(theta, tol);
  if (!check.valid()) {
    throw NotAValidSuperchannel("cannot realize: " + describe(check));
  }
  const SuperchannelDims& d = theta.dims();
  const SuperKrausFamily family = n_operators(theta, tol, rank_rtol);
  const FThetaChannel f = f_theta_channel(family, tol, rank_rtol);

  const std::size_t r = f.kraus.size();
  const Index db1 = idx(d.b1.dim), da1 = idx(d.a1.dim);
  const Index da2 = idx(d.a2.dim), db2 = idx(d.b2.dim);
  const System e1{fresh("E1", d.choi_order()), r};
  const System e2{fresh("E2", d.choi_order().concat(SystemList{e1})), family.size()};

  // V = sum_j |j>_{E1} (x) conj(L_j).
  Matrix v(idx(r) * db1, da1);
  std::vector<double> lambda(r);
  for (std::size_t jj = 0; jj < r; ++jj) {
    const Matrix& l = f.kraus.ops()[jj].matrix();
    v.block(idx(jj) * db1, 0, db1, da1) = l.conjugate();
    lambda[jj] = l.squaredNorm();
  }

  // W_i[b2, (k, a2)] = (1/lambda_k) sum_{a1,b1} L_k[b1, a1] N_i[(b1, b2), (a1, a2)].
  const Index e2d = idx(family.size());
  Matrix w = Matrix::Zero(e2d * db2, idx(r) * da2);
  for (Index i = 0; i < e2d; ++i) {
    const Matrix& n = family.n_ops[static_cast<std::size_t>(i)].matrix();
    for (std::size_t k = 0; k < r; ++k) {
      const Matrix& l = f.kraus.ops()[k].matrix();
      for (Index b2 = 0; b2 < db2; ++b2) {
        for (Index a2 = 0; a2 < da2; ++a2) {
          Complex acc = 0.0;
          for (Index b1 = 0; b1 < db1; ++b1) {
            for (Index a1 = 0; a1 < da1; ++a1) {
              acc += l(b1, a1) * n(b1 * db2 + b2, a1 * da2 + a2);
            }
          }
          w(i * db2 + b2, idx(k) * da2 + a2) = acc / lambda[k];
        }
      }
    }
  }

  Realization out{
      LabeledOperator(std::move(v), SystemList{d.a1}, SystemList{e1, d.b1}),
      LabeledOperator(std::move(w), SystemList{e1, d.a2}, SystemList{e2, d.b2}),
      r,
      family.size(),
      0.0,
      0.0};
  const Matrix& vm = out.v.matrix();
  const Matrix& wm = out.w.matrix();
  out.isometry_deviation =
      std::max((vm.adjoint() * vm - Matrix::Identity(vm.cols(), vm.cols())).norm(),
               (wm.adjoint() * wm - Matrix::Identity(wm.cols(), wm.cols())).norm());
  const SuperchannelChoi rebuilt = join_parts(out.pre(), out.post());
  const LabeledOperator aligned =
      permute_systems(rebuilt.op(), d.choi_order().labels());
  out.reconstruction_residual =
      (aligned.matrix() - theta.matrix()).norm() / theta.matrix().norm();
  if (out.reconstruction_residual > tol || out.isometry_deviation > tol) {
    std::ostringstream os;
    os << "realization failed verification: reconstruction residual "
       << out.reconstruction_residual << ", isometry deviation "
       << out.isometry_deviation << ", tolerance " << tol;
    throw ResidualTooLarge(os.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

SuperchannelChoi identity_superchannel(std::size_t d1, std::size_t d2) {
  const SuperchannelDims dims = make_dims(d1, d2, d1, d2);
  const LabeledOperator j =
      kron(gamma_operator(dims.a1, dims.b1), gamma_operator(dims.a2, dims.b2));
  return SuperchannelChoi(permute_systems(j, dims.choi_order().labels()), dims);
}

SuperchannelChoi random_superchannel(const SuperchannelDims& dims,
                                     std::size_t memory_dim, std::uint64_t seed,
                                     std::size_t pre_rank, std::size_t post_rank) {
  if (memory_dim < 1) throw InvalidArgument("memory_dim must be at least 1");
  Rng rng(seed);
  const std::uint64_t pre_seed = rng();
  const std::uint64_t post_seed = rng();
  const System e1{fresh("E1", dims.choi_order()), memory_dim};
  const SystemList pre_in{dims.a1};
  const SystemList pre_out{e1, dims.b1};
  const SystemList post_in{e1, dims.a2};
  const SystemList post_out{dims.b2};
  if (pre_rank == 0) pre_rank = pre_in.total_dim();
  if (post_rank == 0) post_rank = post_in.total_dim();
  const KrausRep pre = random_channel(pre_in, pre_out, pre_rank, pre_seed);
  const KrausRep post = random_channel(post_in, post_out, post_rank, post_seed);
  const SuperchannelChoi joined = join_parts(choi_from_kraus(pre), choi_from_kraus(post));
  // Keep the requested slot labels even for dim-1 slots.
  return SuperchannelChoi(joined.matrix(), dims);
}

}  // namespace choikit
