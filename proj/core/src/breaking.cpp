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

#include "choikit/breaking.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <set>

#include "choikit/random.hpp"

namespace choikit {

namespace {

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

std::size_t side_dim(const LabeledOperator& op, const std::vector<std::string>& labels) {
  std::size_t d = 1;
  for (const auto& l : labels) d *= op.out_systems().at(l).dim;
  return d;
}

}  // namespace

const char* to_string(PptExactness e) {
  return e == PptExactness::kDecisive ? "ppt-decisive" : "ppt-necessary-only";
}

const char* to_string(EbVerdict v) {
  switch (v) {
    case EbVerdict::kEntanglementBreaking:
      return "entanglement-breaking";
    case EbVerdict::kNotEntanglementBreaking:
      return "not-entanglement-breaking";
    case EbVerdict::kPptNecessaryOnly:
      return "ppt-necessary-only";
  }
  return "unknown";
}

PptVerdict ppt_test(const LabeledOperator& op, const Bipartition& cut, double tol) {
  if (!op.is_square()) {
    throw InvalidArgument("ppt_test needs identical input and output systems");
  }
  std::set<std::string> all;
  for (const auto& l : cut.left) all.insert(l);
  for (const auto& l : cut.right) {
    if (!all.insert(l).second) {
      throw InvalidArgument("bipartition sides share label '" + l + "'");
    }
  }
  const auto labels = op.out_systems().labels();
  if (all != std::set<std::string>(labels.begin(), labels.end())) {
    throw InvalidArgument("bipartition does not cover exactly the operator's systems");
  }
  if (!is_hermitian(op, tol)) throw NotHermitian("ppt_test needs a Hermitian operator");

  PptVerdict v;
  v.cut = cut;
  v.tol = tol;
  const LabeledOperator pt = cut.right.empty() ? op : partial_transpose(op, cut.right);
  v.min_eigenvalue = min_eigenvalue(pt.matrix());
  v.is_ppt = v.min_eigenvalue >= -tol;
  v.exactness = side_dim(op, cut.left) * side_dim(op, cut.right) <= 6
                    ? PptExactness::kDecisive
                    : PptExactness::kNecessaryOnly;
  return v;
}

std::vector<PptVerdict> ppt_battery(const LabeledOperator& op, double tol) {
  const auto labels = op.out_systems().labels();
  const std::size_t n = labels.size();
  std::vector<PptVerdict> out;
  if (n < 2) return out;
  // The first label always sits on the left, so each cut appears once.
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)) - 1; ++mask) {
    Bipartition cut;
    cut.left.push_back(labels[0]);
    for (std::size_t i = 1; i < n; ++i) {
      if (mask & (std::size_t{1} << (i - 1))) {
        cut.left.push_back(labels[i]);
      } else {
        cut.right.push_back(labels[i]);
      }
    }
    out.push_back(ppt_test(op, cut, tol));
  }
  return out;
}

EbChannelReport eb_channel_report(const ChoiRep& c, double tol) {
  const ChannelValidityReport r = validate_channel(c, tol);
  if (!r.valid()) {
    throw InvalidChannel("eb_channel_report needs a valid channel (min eigenvalue " +
                         std::to_string(r.min_eigenvalue) + ", tp deviation " +
                         std::to_string(r.tp_deviation) + ")");
  }
  EbChannelReport report;
  report.ppt = ppt_test(c.op(), {c.input().labels(), c.output().labels()}, tol);
  if (!report.ppt.is_ppt) {
    report.verdict = EbVerdict::kNotEntanglementBreaking;
  } else if (report.ppt.exactness == PptExactness::kDecisive) {
    report.verdict = EbVerdict::kEntanglementBreaking;
  } else {
    report.verdict = EbVerdict::kPptNecessaryOnly;
  }
  return report;
}

LabeledOperator SeparableDecomposition::reconstruct() const {
  const SystemList joint = left.concat(right);
  LabeledOperator acc = LabeledOperator::zero(joint, joint);
  for (const auto& [x, y] : terms) acc += kron(x, y);
  return acc;
}

LabeledOperator MeasurePrepare::apply(const LabeledOperator& rho) const {
  if (povm.empty()) throw InvalidArgument("empty measure-and-prepare scheme");
  const Matrix& m0 = povm.front().matrix();
  if (rho.rows() != static_cast<std::size_t>(m0.rows()) || !rho.is_square()) {
    throw DimensionMismatch("state does not match the POVM dimension");
  }
  const SystemList& out = states.front().out_systems();
  LabeledOperator acc = LabeledOperator::zero(out, out);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    // Tr[M^T rho] = sum_{ab} M[b, a] rho[b, a].
    const Complex w = (povm[i].matrix().array() * rho.matrix().array()).sum();
    acc += w * states[i];
  }
  return acc;
}

MeasurePrepare measure_prepare_from_decomposition(const SeparableDecomposition& d,
                                                  double tol) {
  MeasurePrepare mp;
  for (const auto& [x, y] : d.terms) {
    const Complex t = trace(y);
    if (std::abs(t) <= tol) continue;
    mp.povm.push_back(t * x);
    mp.states.push_back((1.0 / t) * y);
  }
  const auto dl = static_cast<Eigen::Index>(d.left.total_dim());
  Matrix total = -Matrix::Identity(dl, dl);
  for (const auto& m : mp.povm) total += m.matrix();
  mp.completeness_deviation = total.norm();
  if (mp.povm.empty() || mp.completeness_deviation > tol) {
    throw IncompleteDecomposition("POVM elements deviate from the identity by " +
                                  std::to_string(mp.completeness_deviation));
  }
  return mp;
}

LabeledOperator choi_from_measure_prepare(const MeasurePrepare& mp) {
  if (mp.povm.empty() || mp.povm.size() != mp.states.size()) {
    throw InvalidArgument("measure-and-prepare needs matching, nonempty lists");
  }
  LabeledOperator acc = kron(mp.povm.front(), mp.states.front());
  for (std::size_t i = 1; i < mp.povm.size(); ++i) acc += kron(mp.povm[i], mp.states[i]);
  return acc;
}

Bipartition type_i_cut(const SuperchannelDims& d) {
  return {{d.a1.label, d.b2.label}, {d.b1.label, d.a2.label}};
}

Bipartition type_ii_cut(const SuperchannelDims& d) {
  return {{d.a1.label, d.a2.label}, {d.b1.label, d.b2.label}};
}

BreakingReport superchannel_breaking_report(const SuperchannelChoi& theta, double tol) {
  const SuperchannelValidityReport r = validate_superchannel(theta, tol);
  if (!r.valid()) {
    throw NotAValidSuperchannel("breaking report needs a valid superchannel");
  }
  BreakingReport report;
  report.type_i = ppt_test(theta.op(), type_i_cut(theta.dims()), tol);
  report.type_ii = ppt_test(theta.op(), type_ii_cut(theta.dims()), tol);
  report.common_cause_breaking = report.type_i.is_ppt;
  return report;
}

SuperchannelChoi example_type1_not_type2(std::size_t d,
                                         const std::optional<Matrix>& omega) {
  if (d < 1) throw InvalidArgument("dimension must be at least 1");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix w = Matrix::Zero(n, n);
  w(0, 0) = 1.0;
  if (omega) {
    w = *omega;
    if (w.rows() != n || w.cols() != n) {
      throw InvalidArgument("omega must be a " + std::to_string(d) + "x" +
                            std::to_string(d) + " matrix");
    }
    const LabeledOperator wo = LabeledOperator::square(w, SystemList{{"B1", d}});
    if (!is_hermitian(wo, kDefaultTol) || min_eigenvalue(w) < -kDefaultTol ||
        std::abs(w.trace() - Complex(1.0)) > kDefaultTol) {
      throw InvalidArgument("omega is not a density matrix");
    }
  }
  const SuperchannelDims dims = make_dims(d, d, d, d);
  const LabeledOperator j =
      kron(kron(gamma_operator(dims.a1, dims.b2),
                LabeledOperator::identity(SystemList{dims.a2})),
           LabeledOperator::square(w, SystemList{dims.b1}));
  return SuperchannelChoi(permute_systems(j, dims.choi_order().labels()), dims);
}

ChoiRep depolarizing_channel(double p, std::size_t d) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("depolarizing parameter must lie in [0, 1]");
  }
  const System a{"A", d}, b{"B", d};
  const LabeledOperator g = gamma_operator(a, b);
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix j = (1.0 - p) * g.matrix() +
             (p / static_cast<double>(d)) * Matrix::Identity(n, n);
  return ChoiRep(std::move(j), SystemList{a}, SystemList{b});
}

EbSuperchannelSample random_eb_superchannel(const SuperchannelDims& dims,
                                            std::size_t n_terms, std::uint64_t seed,
                                            double tol, std::size_t max_retries) {
  if (n_terms < 1) throw InvalidArgument("n_terms must be at least 1");
  Rng rng(seed);
  const SystemList a1{dims.a1}, a2{dims.a2}, b1{dims.b1}, b2{dims.b2};
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    SeparableDecomposition dec{a1.concat(a2), b1.concat(b2), {}};
    const std::vector<LabeledOperator> p = random_povm(a1, n_terms, rng);
    for (std::size_t j = 0; j < n_terms; ++j) {
      const LabeledOperator tau = random_state(b1, rng);
      const std::vector<LabeledOperator> r = random_povm(a2, n_terms, rng);
      for (std::size_t k = 0; k < n_terms; ++k) {
        dec.terms.emplace_back(kron(p[j], r[k]), kron(tau, random_state(b2, rng)));
      }
    }
    SuperchannelChoi theta(dec.reconstruct(), dims);
    if (validate_superchannel(theta, tol).valid()) {
      return {std::move(theta), std::move(dec)};
    }
  }
  throw GenerationFailed("no valid sample after " + std::to_string(max_retries + 1) +
                         " attempts");
}

}  // namespace choikit
