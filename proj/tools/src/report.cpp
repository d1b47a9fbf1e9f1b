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

#include "report.hpp"

#include <ostream>

namespace choikit::cli {
namespace {

void print_text(std::ostream& os, const nlohmann::ordered_json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_text(os, value, name);
    } else if (value.is_string()) {
      os << name << ": " << value.get<std::string>() << '\n';
    } else {
      os << name << ": " << value.dump() << '\n';
    }
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s;
  return out;
}

}  // namespace

void Report::print(std::ostream& os, Format format) const {
  if (format == Format::kJson) {
    os << data_.dump(2) << '\n';
  } else {
    print_text(os, data_, "");
  }
}

Report channel_report(const ChannelValidityReport& r) {
  Report out;
  out.set("valid", r.valid())
      .set("hermitian", r.hermitian)
      .set("hermiticity_deviation", r.hermiticity_deviation)
      .set("cp", r.cp)
      .set("min_eigenvalue", r.min_eigenvalue)
      .set("tp", r.tp)
      .set("tp_deviation", r.tp_deviation)
      .set("tol", r.tol);
  return out;
}

Report superchannel_report(const SuperchannelValidityReport& r) {
  Report out;
  out.set("valid", r.valid())
      .set("hermitian", r.hermitian)
      .set("hermiticity_deviation", r.hermiticity_deviation)
      .set("cp", r.cp)
      .set("min_eigenvalue", r.min_eigenvalue)
      .set("tp", r.tp)
      .set("tp_deviation", r.tp_deviation)
      .set("ns", r.ns)
      .set("ns_deviation", r.ns_deviation)
      .set("tol", r.tol);
  return out;
}

Report ppt_report(const PptVerdict& v) {
  Report out;
  out.set("cut", join(v.cut.left) + "|" + join(v.cut.right))
      .set("ppt", v.is_ppt)
      .set("min_eigenvalue", v.min_eigenvalue)
      .set("exactness", std::string(to_string(v.exactness)));
  return out;
}

}  // namespace choikit::cli
