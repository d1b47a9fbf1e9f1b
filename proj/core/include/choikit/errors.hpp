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

#include <stdexcept>
#include <string>

namespace choikit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

#define CHOIKIT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& message) : Error(message) {}    \
  };

// Structural errors: shapes, labels and arguments.
CHOIKIT_DEFINE_ERROR(DimensionMismatch)
CHOIKIT_DEFINE_ERROR(UnknownLabel)
CHOIKIT_DEFINE_ERROR(InvalidArgument)

// Numerical preconditions that failed at the configured tolerance.
CHOIKIT_DEFINE_ERROR(NotHermitian)
CHOIKIT_DEFINE_ERROR(NotPSD)
CHOIKIT_DEFINE_ERROR(NotTP)
CHOIKIT_DEFINE_ERROR(NotIsometry)
CHOIKIT_DEFINE_ERROR(InvalidChannel)
CHOIKIT_DEFINE_ERROR(NotAValidSuperchannel)
CHOIKIT_DEFINE_ERROR(ResidualTooLarge)
CHOIKIT_DEFINE_ERROR(IncompleteDecomposition)
CHOIKIT_DEFINE_ERROR(GenerationFailed)

// Document I/O.
CHOIKIT_DEFINE_ERROR(ParseError)
CHOIKIT_DEFINE_ERROR(UnknownKind)
CHOIKIT_DEFINE_ERROR(IoError)

#undef CHOIKIT_DEFINE_ERROR

}  // namespace choikit
