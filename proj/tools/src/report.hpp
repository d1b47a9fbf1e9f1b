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

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

#include "choikit/breaking.hpp"
#include "choikit/channel.hpp"
#include "choikit/superchannel.hpp"

namespace choikit::cli {

enum class Format { kText, kJson };

/// Flat key/value report. Keys keep insertion order.
class Report {
 public:
  template <typename T>
  Report& set(const std::string& key, const T& value) {
    data_[key] = value;
    return *this;
  }
  Report& nest(const std::string& key, const Report& child) {
    data_[key] = child.data_;
    return *this;
  }

  void print(std::ostream& os, Format format) const;

 private:
  nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
};

Report channel_report(const ChannelValidityReport& r);
Report superchannel_report(const SuperchannelValidityReport& r);
Report ppt_report(const PptVerdict& v);

}  // namespace choikit::cli
