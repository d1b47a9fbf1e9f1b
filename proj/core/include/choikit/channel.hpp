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
#include <variant>
#include <vector>

#include "choikit/tensor.hpp"

namespace choikit {

/// Choi operator J = sum_ij |i><j| (x) E(|i><j|), square on input ++ output.
class ChoiRep {
 public:
  ChoiRep(Matrix j, SystemList input, SystemList output);
  /// `op` must be square on input ++ output (in that order).
  ChoiRep(LabeledOperator op, SystemList input, SystemList output);

  const LabeledOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const SystemList& input() const { return input_; }
  const SystemList& output() const { return output_; }
  std::size_t d_in() const { return input_.total_dim(); }
  std::size_t d_out() const { return output_.total_dim(); }

 private:
  LabeledOperator op_;
  SystemList input_;
  SystemList output_;
};

class KrausRep {
 public:
  KrausRep(std::vector<Matrix> ops, SystemList input, SystemList output);
  explicit KrausRep(std::vector<LabeledOperator> ops);

  const std::vector<LabeledOperator>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  const SystemList& input() const { return ops_.front().in_systems(); }
  const SystemList& output() const { return ops_.front().out_systems(); }

 private:
  std::vector<LabeledOperator> ops_;
};

/// Isometry V: input -> output (x) env, environment listed last.
class StinespringRep {
 public:
  StinespringRep(Matrix v, SystemList input, SystemList output, System env);

  const LabeledOperator& isometry() const { return v_; }
  const SystemList& input() const { return input_; }
  const SystemList& output() const { return output_; }
  const System& env() const { return env_; }

 private:
  LabeledOperator v_;
  SystemList input_;
  SystemList output_;
  System env_;
};

/// Matrix L with L vec(rho) = vec(E(rho)) under this library's vec
/// convention. Size d_out^2 x d_in^2.
class LiouvilleRep {
 public:
  LiouvilleRep(Matrix l, SystemList input, SystemList output);

  const LabeledOperator& op() const { return l_; }
  const Matrix& matrix() const { return l_.matrix(); }
  const SystemList& input() const { return input_; }
  const SystemList& output() const { return output_; }

 private:
  LabeledOperator l_;
  SystemList input_;
  SystemList output_;
};

using AnyChannel = std::variant<ChoiRep, KrausRep, StinespringRep, LiouvilleRep>;

struct ChannelValidityReport {
  bool hermitian = false;
  double hermiticity_deviation = 0.0;  // ||J - J^dagger||_F
  bool cp = false;
  double min_eigenvalue = 0.0;
  bool tp = false;
  double tp_deviation = 0.0;  // ||Tr_out J - 1||_F
  double tol = kDefaultTol;

  bool valid() const { return hermitian && cp && tp; }
};

// ---------------------------------------------------------------------------
// Conversions

ChoiRep choi_from_kraus(const KrausRep& k);
/// Minimal Kraus set: exactly numeric_rank(J) operators.
KrausRep kraus_from_choi(const ChoiRep& c, double tol = kDefaultTol,
                         double rank_rtol = kDefaultRankRtol);
/// V = sum_i K_i (x) |i>_E. Throws NotTP.
StinespringRep stinespring_from_kraus(const KrausRep& k, double tol = kDefaultTol);
/// K_i = (1 (x) <i|_E) V, one per environment level. Throws NotIsometry.
KrausRep kraus_from_stinespring(const StinespringRep& s, double tol = kDefaultTol);
/// L = sum_i conj(K_i) (x) K_i.
LiouvilleRep liouville_from_kraus(const KrausRep& k);
ChoiRep choi_from_liouville(const LiouvilleRep& l);
/// Pure reindexing of J; valid for any linear map, CP or not.
LiouvilleRep liouville_from_choi(const ChoiRep& c);
/// Environment-free Choi of a Stinespring isometry, Tr_E applied per block.
ChoiRep choi_from_stinespring(const StinespringRep& s);

ChoiRep to_choi(const AnyChannel& ch, double tol = kDefaultTol);
KrausRep to_kraus(const AnyChannel& ch, double tol = kDefaultTol,
                  double rank_rtol = kDefaultRankRtol);
StinespringRep to_stinespring(const AnyChannel& ch, double tol = kDefaultTol,
                              double rank_rtol = kDefaultRankRtol);
LiouvilleRep to_liouville(const AnyChannel& ch, double tol = kDefaultTol,
                          double rank_rtol = kDefaultRankRtol);

// ---------------------------------------------------------------------------
// Checks and action

/// Never throws on invalid input; all verdicts come with their witnesses.
ChannelValidityReport validate_channel(const ChoiRep& c, double tol = kDefaultTol);
/// ||sum K_i^dagger K_i - 1||_F.
double kraus_completeness_deviation(const KrausRep& k);

/// E(rho). `rho` must be square with the channel's input dimensions; the
/// result is labeled with the channel's output systems.
LabeledOperator apply_channel(const AnyChannel& ch, const LabeledOperator& rho);

/// Link product Tr_C[M^{T_C} N], C the shared labels. Both operands are square
/// (Choi-type). The result lists M's remaining systems, then N's.
LabeledOperator link_product(const LabeledOperator& m, const LabeledOperator& n);

/// Choi of e2 o e1 (e1 acts first). Only dimensions must agree at the
/// interface; labels are taken from e1's input and e2's output.
ChoiRep compose_channels(const ChoiRep& e2, const ChoiRep& e1);

enum class ChoiVariant { kIdentity, kTranspose };

/// f( sum_ij |i><j| (x) E(g(|i><j|)) ) for f, g in {id, T}. (id, T) is the
/// Jamiolkowski operator. Each variant is an involution, so applying the same
/// variant twice returns J.
LabeledOperator generalized_choi(const ChoiRep& c, ChoiVariant f, ChoiVariant g);
ChoiRep generalized_choi_inverse(const LabeledOperator& j, ChoiVariant f,
                                 ChoiVariant g, const SystemList& input,
                                 const SystemList& output);

// ---------------------------------------------------------------------------
// Generators

/// Random channel with exactly `kraus_rank` Kraus operators, sliced from a
/// random isometry. Needs kraus_rank * d_out >= d_in.
KrausRep random_channel(const SystemList& input, const SystemList& output,
                        std::size_t kraus_rank, std::uint64_t seed);
KrausRep random_channel(std::size_t d_in, std::size_t d_out,
                        std::size_t kraus_rank, std::uint64_t seed);

KrausRep unitary_channel(const Matrix& u, const SystemList& input,
                         const SystemList& output);
KrausRep identity_channel(const SystemList& input, const SystemList& output);
/// rho -> Tr[rho] sigma; Choi is 1_in (x) sigma.
ChoiRep trace_and_prepare(const SystemList& input, const LabeledOperator& sigma);

}  // namespace choikit
