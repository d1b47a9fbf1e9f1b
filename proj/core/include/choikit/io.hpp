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

#include <map>
#include <string>
#include <variant>

#include "choikit/breaking.hpp"
#include "choikit/channel.hpp"
#include "choikit/superchannel.hpp"
#include "choikit/tensor.hpp"

namespace choikit {

inline constexpr const char* kFormatVersion = "1.0";

/// Gour operator together with the slots it was built from.
struct GourOperator {
  LabeledOperator op;  // square on [B1, A2, A1, B2]
  SuperchannelDims dims;
};

using DocumentObject =
    std::variant<LabeledOperator, ChoiRep, KrausRep, StinespringRep, LiouvilleRep,
                 SuperchannelChoi, GourOperator, MeasurePrepare>;

using Metadata = std::map<std::string, std::string>;

struct Document {
  DocumentObject object;
  Metadata metadata;
};

/// "operator", "choi-channel", "kraus-channel", "stinespring", "liouville",
/// "superchannel-choi", "gour" or "measure-prepare".
std::string kind_of(const DocumentObject& obj);

/// Canonical JSON text: fixed field order, 17 significant digits.
std::string to_json(const Document& doc);
/// Throws ParseError (with line/column or the offending field),
/// DimensionMismatch and UnknownKind.
Document from_json(const std::string& text);

/// Throws IoError.
void save_document(const Document& doc, const std::string& path);
Document load_document(const std::string& path);

}  // namespace choikit
