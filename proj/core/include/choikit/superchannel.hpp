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

#include <cstdint>
#include <utility>
#include <vector>

#include "choikit/channel.hpp"
#include "choikit/tensor.hpp"

namespace choikit {

/// The four slots of a superchannel theta: A1 A2 -> B1 B2. The input channel
/// maps B1 -> A2; the output channel maps A1 -> B2. Trivial slots have dim 1.
struct SuperchannelDims {
  System a1{"A1", 1};
  System a2{"A2", 1};
  System b1{"B1", 1};
  System b2{"B2", 1};

  /// [A1, A2, B1, B2], the layout of the Choi operator.
  SystemList choi_order() const { return SystemList{a1, a2, b1, b2}; }
  /// [B1, A2, A1, B2], the layout of the Gour operator.
  SystemList gour_order() const { return SystemList{b1, a2, a1, b2}; }

  friend bool operator==(const SuperchannelDims&, const SuperchannelDims&) = default;
};

SuperchannelDims make_dims(std::size_t a1, std::size_t a2, std::size_t b1,
                           std::size_t b2);

/// Choi operator of theta seen as a bipartite channel A1 A2 -> B1 B2.
/// Construction checks layout only; see validate_superchannel.
class SuperchannelChoi {
 public:
  SuperchannelChoi(Matrix j, SuperchannelDims dims);
  /// `op` must be square on dims.choi_order().
  SuperchannelChoi(LabeledOperator op, SuperchannelDims dims);

  const LabeledOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const SuperchannelDims& dims() const { return dims_; }

 private:
  LabeledOperator op_;
  SuperchannelDims dims_;
};

struct SuperchannelValidityReport {
  bool hermitian = false;
  double hermiticity_deviation = 0.0;
  bool cp = false;
  double min_eigenvalue = 0.0;
  bool tp = false;
  double tp_deviation = 0.0;  // ||Tr_{B1B2} J - 1||_F
  bool ns = false;
  double ns_deviation = 0.0;  // ||Tr_{B2} J - J_{A1B1} (x) 1_{A2}/d_{A2}||_F
  double tol = kDefaultTol;

  bool valid() const { return hermitian && cp && tp && ns; }
};

/// Kraus-type operators of theta and their two reindexed layouts.
///   N_i : A1 A2 -> B1 B2
///   Q_i : B1 A1 A2 -> B2   (partial_mat of N_i over B1)
///   K_i : B1 A2 -> A1 B2   (partial_mat over B1 of partial_vec over A1)
struct SuperKrausFamily {
  SuperchannelDims dims;
  std::vector<LabeledOperator> n_ops;
  std::vector<LabeledOperator> q_ops;
  std::vector<LabeledOperator> k_ops;

  std::size_t size() const { return n_ops.size(); }
};

struct FThetaChannel {
  ChoiRep choi;
  KrausRep kraus;  // minimal
  std::size_t rank = 0;
};

struct Realization {
  LabeledOperator v;  // A1 -> E1 B1
  LabeledOperator w;  // E1 A2 -> E2 B2
  std::size_t e1_dim = 0;
  std::size_t e2_dim = 0;
  double reconstruction_residual = 0.0;  // relative Frobenius
  double isometry_deviation = 0.0;       // max of ||V^dag V - 1||, ||W^dag W - 1||

  /// Pre-processing channel A1 -> E1 B1.
  ChoiRep pre() const;
  /// Post-processing channel E1 A2 -> B2 with E2 traced out.
  ChoiRep post() const;
};

struct MemoryCostReport {
  std::size_t eq_rank = 0;       // rank of Tr_{A2B2} sum_i vec(K_i^dag) vec(K_i^dag)^dag
  std::size_t f_theta_rank = 0;  // rank of the Choi operator of F_theta
};

// ---------------------------------------------------------------------------
// Construction and checks

/// J^theta = J^pre * J^post over the systems the two parts share (the memory).
/// pre: A1 -> E1 B1, post: E1 A2 -> B2. Each slot may hold zero or one
/// system; a missing slot becomes a dim-1 system with the default label.
SuperchannelChoi superchannel_from_parts(const ChoiRep& pre, const ChoiRep& post,
                                         double tol = kDefaultTol);
SuperchannelValidityReport validate_superchannel(const LabeledOperator& op,
                                                 const SuperchannelDims& dims,
                                                 double tol = kDefaultTol);
SuperchannelValidityReport validate_superchannel(const SuperchannelChoi& theta,
                                                 double tol = kDefaultTol);

/// Relabels a channel B1 -> A2 onto the superchannel's slots.
LabeledOperator input_channel_op(const SuperchannelDims& dims, const ChoiRep& e);

/// J^{theta(e)} = J^theta * J^e; e: B1 -> A2. Throws InvalidChannel.
ChoiRep apply_to_channel(const SuperchannelChoi& theta, const ChoiRep& e,
                         double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Gour operator

/// Permutation of J^theta to [B1, A2, A1, B2].
LabeledOperator gour_from_choi(const SuperchannelChoi& theta);
/// sum_{ijkl} |i><j|_{B1} (x) |k><l|_{A2} (x) J^{theta(e_ijkl)}, each term
/// evaluated with the link product.
LabeledOperator gour_from_basis_maps(const SuperchannelChoi& theta);
SuperchannelChoi choi_from_gour(const LabeledOperator& g, const SuperchannelDims& dims);

// ---------------------------------------------------------------------------
// Representations

/// Minimal family from the spectral decomposition of J^theta. Throws NotPSD.
SuperKrausFamily n_operators(const SuperchannelChoi& theta, double tol = kDefaultTol,
                             double rank_rtol = kDefaultRankRtol);
/// Tr_{B1}[sum_i Q_i^dag Q_i] on A1 A2.
LabeledOperator q_completeness(const SuperKrausFamily& family);

/// sum_i K_i J^e K_i^dag.
ChoiRep kraus_apply(const SuperKrausFamily& family, const ChoiRep& e);
/// theta(e)(rho) = sum_i Q_i (J^e_{B1A2} (x) rho_{A1}) Q_i^dag, with the
/// argument regrouped to B1 A1 A2.
LabeledOperator q_apply(const SuperKrausFamily& family, const ChoiRep& e,
                        const LabeledOperator& rho);
/// Choi operator assembled from q_apply on the basis |a><a'|.
ChoiRep q_apply_choi(const SuperKrausFamily& family, const ChoiRep& e);

/// V_s = sum_i Q_i (x) |i>_E : B1 A1 A2 -> B2 E.
LabeledOperator super_stinespring(const SuperKrausFamily& family);
/// Tr_E[V_s (J^e (x) rho) V_s^dag], same regrouping as q_apply.
LabeledOperator super_stinespring_apply(const LabeledOperator& vs,
                                        const SuperchannelDims& dims,
                                        const ChoiRep& e, const LabeledOperator& rho);
ChoiRep super_stinespring_apply_choi(const LabeledOperator& vs,
                                     const SuperchannelDims& dims, const ChoiRep& e);

/// K = sum_i conj(K_i) (x) K_i, acting on vec(J^e).
LabeledOperator super_liouville(const SuperKrausFamily& family);
ChoiRep super_liouville_apply(const LabeledOperator& k, const SuperchannelDims& dims,
                              const ChoiRep& e);

// ---------------------------------------------------------------------------
// Realization

/// rho -> (1/d_{A2}) Tr_{A2}[sum_i K_i^dag (rho (x) 1_{B2}) K_i], A1 -> B1.
FThetaChannel f_theta_channel(const SuperKrausFamily& family,
                              double tol = kDefaultTol,
                              double rank_rtol = kDefaultRankRtol);
MemoryCostReport memory_cost_report(const SuperchannelChoi& theta,
                                    double tol = kDefaultTol,
                                    double rank_rtol = kDefaultRankRtol);
/// Minimal memory dimension d_theta.
std::size_t memory_cost(const SuperchannelChoi& theta, double tol = kDefaultTol,
                        double rank_rtol = kDefaultRankRtol);
/// theta = Tr_{E2} o W o V with |E1| = d_theta. Throws NotAValidSuperchannel
/// and ResidualTooLarge.
Realization realize(const SuperchannelChoi& theta, double tol = kDefaultTol,
                    double rank_rtol = kDefaultRankRtol);

// ---------------------------------------------------------------------------
// Generators

/// Superchannel that passes the input channel through: A1 -> B1 and A2 -> B2
/// are identities.
SuperchannelChoi identity_superchannel(std::size_t d1, std::size_t d2);
/// From random pre and post channels with memory of dimension memory_dim.
/// A Kraus rank of 0 selects the input dimension of that part.
SuperchannelChoi random_superchannel(const SuperchannelDims& dims,
                                     std::size_t memory_dim, std::uint64_t seed,
                                     std::size_t pre_rank = 0,
                                     std::size_t post_rank = 0);

}  // namespace choikit
