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
#include <random>
#include <vector>

#include "choikit/tensor.hpp"

namespace choikit {

// Every generator takes its engine explicitly; nothing here holds global state.
using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Columns of a random Gaussian matrix after orthonormalization; rows >= cols.
Matrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);
Matrix random_unitary(std::size_t d, Rng& rng);
/// Full-rank random density matrix (normalized G G^dagger).
LabeledOperator random_state(const SystemList& systems, Rng& rng);
/// Random pure state |psi><psi|.
LabeledOperator random_pure_state(const SystemList& systems, Rng& rng);
/// n positive effects on `systems` summing to the identity.
std::vector<LabeledOperator> random_povm(
    const SystemList& systems, std::size_t n, Rng& rng);

}  // namespace choikit
