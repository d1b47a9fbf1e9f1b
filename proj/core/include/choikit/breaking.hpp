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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "choikit/channel.hpp"
#include "choikit/superchannel.hpp"
#include "choikit/tensor.hpp"

namespace choikit {

struct Bipartition {
  std::vector<std::string> left;
  std::vector<std::string> right;
};

// PPT is sufficient for separability only when the cut is at most 2x3.
enum class PptExactness { kDecisive, kNecessaryOnly };

const char* to_string(PptExactness e);

struct PptVerdict {
  Bipartition cut;
  double min_eigenvalue = 0.0;  // of the partial transpose over cut.right
  bool is_ppt = false;          // min_eigenvalue >= -tol
  double tol = kDefaultTol;
  PptExactness exactness = PptExactness::kNecessaryOnly;
};

/// Throws NotHermitian, and InvalidArgument unless the cut splits all labels.
PptVerdict ppt_test(const LabeledOperator& op, const Bipartition& cut,
                    double tol = kDefaultTol);
/// PPT across every bipartition (each unordered cut once). Passing all of
/// them is necessary, not sufficient, for full separability.
std::vector<PptVerdict> ppt_battery(const LabeledOperator& op, double tol = kDefaultTol);

enum class EbVerdict { kEntanglementBreaking, kNotEntanglementBreaking, kPptNecessaryOnly };

const char* to_string(EbVerdict v);

struct EbChannelReport {
  EbVerdict verdict = EbVerdict::kNotEntanglementBreaking;
  PptVerdict ppt;
};

/// Cut input | output of the Choi operator. Throws InvalidChannel.
EbChannelReport eb_channel_report(const ChoiRep& c, double tol = kDefaultTol);

/// sum_i X_i (x) Y_i with X_i on `left` and Y_i on `right`.
struct SeparableDecomposition {
  SystemList left;
  SystemList right;
  std::vector<std::pair<LabeledOperator, LabeledOperator>> terms;

  LabeledOperator reconstruct() const;
};

/// POVM {M_i} on the inputs and states {sigma_i} on the outputs.
struct MeasurePrepare {
  std::vector<LabeledOperator> povm;
  std::vector<LabeledOperator> states;
  double completeness_deviation = 0.0;  // ||sum_i M_i - 1||_F

  /// rho -> sum_i Tr[M_i^T rho] sigma_i.
  LabeledOperator apply(const LabeledOperator& rho) const;
};

/// M_i = Tr[Y_i] X_i, sigma_i = Y_i / Tr[Y_i]; terms with Tr[Y_i] <= tol are
/// dropped. Throws IncompleteDecomposition when sum_i M_i is not 1.
MeasurePrepare measure_prepare_from_decomposition(const SeparableDecomposition& d,
                                                  double tol = kDefaultTol);
/// sum_i M_i (x) sigma_i.
LabeledOperator choi_from_measure_prepare(const MeasurePrepare& mp);

struct BreakingReport {
  PptVerdict type_i;   // A1 B2 | B1 A2
  PptVerdict type_ii;  // A1 A2 | B1 B2
  bool common_cause_breaking = false;
};

Bipartition type_i_cut(const SuperchannelDims& dims);
Bipartition type_ii_cut(const SuperchannelDims& dims);

/// Throws NotAValidSuperchannel.
BreakingReport superchannel_breaking_report(const SuperchannelChoi& theta,
                                            double tol = kDefaultTol);

/// Identity A1 -> B2, fixed state omega on B1, trace over A2. omega defaults
/// to |0><0|; it must be a d x d density matrix.
SuperchannelChoi example_type1_not_type2(std::size_t d = 2,
                                         const std::optional<Matrix>& omega = {});

/// Choi operator (1 - p) Gamma + (p / d) 1 on A B.
ChoiRep depolarizing_channel(double p, std::size_t d = 2);

struct EbSuperchannelSample {
  SuperchannelChoi theta;
  SeparableDecomposition decomposition;  // across A1 A2 | B1 B2
};

/// Measure A1 with an n_terms-outcome POVM, prepare tau_j on B1, then measure
/// A2 with a POVM conditioned on j and prepare omega_{jk} on B2. Samples that
/// fail validation are redrawn up to max_retries times (GenerationFailed).
EbSuperchannelSample random_eb_superchannel(const SuperchannelDims& dims,
                                            std::size_t n_terms, std::uint64_t seed,
                                            double tol = kDefaultTol,
                                            std::size_t max_retries = 16);

}  // namespace choikit
