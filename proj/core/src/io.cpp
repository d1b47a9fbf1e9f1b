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

#include "choikit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace choikit {

namespace {

using nlohmann::json;
using Index = Eigen::Index;

enum class Role { kInput, kOutput };

struct WireSystem {
  System system;
  Role role;
};

// Flat view of any document object.
struct Wire {
  std::string kind;
  std::vector<WireSystem> systems;
  std::vector<Matrix> matrices;
  Metadata extra;
};

void add(std::vector<WireSystem>& out, const SystemList& list, Role role) {
  for (const auto& s : list) out.push_back({s, role});
}

Wire to_wire(const DocumentObject& obj) {
  Wire w;
  w.kind = kind_of(obj);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LabeledOperator>) {
          add(w.systems, x.in_systems(), Role::kInput);
          add(w.systems, x.out_systems(), Role::kOutput);
          w.matrices.push_back(x.matrix());
        } else if constexpr (std::is_same_v<T, ChoiRep> || std::is_same_v<T, LiouvilleRep>) {
          add(w.systems, x.input(), Role::kInput);
          add(w.systems, x.output(), Role::kOutput);
          w.matrices.push_back(x.matrix());
        } else if constexpr (std::is_same_v<T, KrausRep>) {
          add(w.systems, x.input(), Role::kInput);
          add(w.systems, x.output(), Role::kOutput);
          for (const auto& k : x.ops()) w.matrices.push_back(k.matrix());
        } else if constexpr (std::is_same_v<T, StinespringRep>) {
          add(w.systems, x.input(), Role::kInput);
          add(w.systems, x.isometry().out_systems(), Role::kOutput);
          w.matrices.push_back(x.isometry().matrix());
          w.extra["environment"] = x.env().label;
        } else if constexpr (std::is_same_v<T, SuperchannelChoi>) {
          const SuperchannelDims& d = x.dims();
          w.systems = {{d.a1, Role::kInput}, {d.a2, Role::kInput},
                       {d.b1, Role::kOutput}, {d.b2, Role::kOutput}};
          w.matrices.push_back(x.matrix());
        } else if constexpr (std::is_same_v<T, GourOperator>) {
          const SuperchannelDims& d = x.dims;
          w.systems = {{d.b1, Role::kOutput}, {d.a2, Role::kInput},
                       {d.a1, Role::kInput}, {d.b2, Role::kOutput}};
          w.matrices.push_back(x.op.matrix());
        } else {
          if (x.povm.empty()) throw IoError("empty measure-and-prepare scheme");
          add(w.systems, x.povm.front().out_systems(), Role::kInput);
          add(w.systems, x.states.front().out_systems(), Role::kOutput);
          for (const auto& m : x.povm) w.matrices.push_back(m.matrix());
          for (const auto& s : x.states) w.matrices.push_back(s.matrix());
        }
      },
      obj);
  return w;
}

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) throw IoError("cannot serialize a non-finite entry");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

// ---------------------------------------------------------------------------
// Parsing helpers

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(name, "missing field");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) fail(rw, "expected a nonempty row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) {
      fail(rw, "row has " + std::to_string(j[r].size()) + " entries, expected " +
                   std::to_string(cols));
    }
  }
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      const std::string ew = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(ew, "expected a complex entry [re, im]");
      }
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

std::size_t one_matrix(const Wire& w) {
  if (w.matrices.size() != 1) {
    throw ParseError("matrices: kind '" + w.kind + "' takes exactly one matrix, got " +
                     std::to_string(w.matrices.size()));
  }
  return 0;
}

DocumentObject from_wire(const Wire& w) {
  std::vector<System> ins, outs;
  for (const auto& s : w.systems) (s.role == Role::kInput ? ins : outs).push_back(s.system);
  const SystemList in(ins), out(outs);
  auto require_slots = [&]() {
    if (ins.size() != 2 || outs.size() != 2) {
      throw ParseError("systems: kind '" + w.kind +
                       "' needs two input and two output systems");
    }
  };
  if (w.kind == "operator") {
    return LabeledOperator(w.matrices[one_matrix(w)], in, out);
  }
  if (w.kind == "choi-channel") {
    return ChoiRep(w.matrices[one_matrix(w)], in, out);
  }
  if (w.kind == "kraus-channel") {
    if (w.matrices.empty()) throw ParseError("matrices: a Kraus set needs an operator");
    return KrausRep(w.matrices, in, out);
  }
  if (w.kind == "stinespring") {
    auto it = w.extra.find("environment");
    if (it == w.extra.end()) fail("metadata.environment", "missing field");
    if (outs.empty() || outs.back().label != it->second) {
      fail("systems", "environment '" + it->second + "' must be the last output");
    }
    const System env = outs.back();
    outs.pop_back();
    return StinespringRep(w.matrices[one_matrix(w)], in, SystemList(outs), env);
  }
  if (w.kind == "liouville") {
    return LiouvilleRep(w.matrices[one_matrix(w)], in, out);
  }
  if (w.kind == "superchannel-choi") {
    require_slots();
    const SuperchannelDims dims{ins[0], ins[1], outs[0], outs[1]};
    return SuperchannelChoi(w.matrices[one_matrix(w)], dims);
  }
  if (w.kind == "gour") {
    require_slots();
    if (w.systems[0].role != Role::kOutput || w.systems[1].role != Role::kInput ||
        w.systems[2].role != Role::kInput || w.systems[3].role != Role::kOutput) {
      fail("systems", "a Gour operator lists B1, A2, A1, B2");
    }
    const SuperchannelDims dims{w.systems[2].system, w.systems[1].system,
                                w.systems[0].system, w.systems[3].system};
    const SystemList order = dims.gour_order();
    return GourOperator{
        LabeledOperator::square(w.matrices[one_matrix(w)], order), dims};
  }
  if (w.kind == "measure-prepare") {
    if (w.matrices.empty() || w.matrices.size() % 2 != 0) {
      fail("matrices", "expected POVM elements followed by the same number of states");
    }
    MeasurePrepare mp;
    const std::size_t n = w.matrices.size() / 2;
    for (std::size_t i = 0; i < n; ++i) {
      mp.povm.push_back(LabeledOperator::square(w.matrices[i], in));
      mp.states.push_back(LabeledOperator::square(w.matrices[n + i], out));
    }
    const auto d = static_cast<Index>(in.total_dim());
    Matrix total = -Matrix::Identity(d, d);
    for (const auto& m : mp.povm) total += m.matrix();
    mp.completeness_deviation = total.norm();
    return mp;
  }
  throw UnknownKind("unknown document kind '" + w.kind + "'");
}

}  // namespace

std::string kind_of(const DocumentObject& obj) {
  static const char* const kNames[] = {"operator",    "choi-channel",      "kraus-channel",
                                       "stinespring", "liouville",         "superchannel-choi",
                                       "gour",        "measure-prepare"};
  return kNames[obj.index()];
}

std::string to_json(const Document& doc) {
  Wire w = to_wire(doc.object);
  Metadata meta = doc.metadata;
  for (const auto& [k, v] : w.extra) meta[k] = v;

  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << json(kFormatVersion).dump() << ",\n";
  os << "  \"kind\": " << json(w.kind).dump() << ",\n";
  os << "  \"systems\": [";
  for (std::size_t i = 0; i < w.systems.size(); ++i) {
    const auto& s = w.systems[i];
    os << (i ? ",\n    " : "\n    ") << "{\"name\": " << json(s.system.label).dump()
       << ", \"dim\": " << s.system.dim << ", \"role\": \""
       << (s.role == Role::kInput ? "input" : "output") << "\"}";
  }
  os << (w.systems.empty() ? "],\n" : "\n  ],\n");
  os << "  \"matrices\": [";
  for (std::size_t k = 0; k < w.matrices.size(); ++k) {
    const Matrix& m = w.matrices[k];
    os << (k ? ",\n    [" : "\n    [");
    for (Index r = 0; r < m.rows(); ++r) {
      os << (r ? ",\n      [" : "\n      [");
      for (Index c = 0; c < m.cols(); ++c) {
        if (c) os << ", ";
        os << "[";
        write_number(os, m(r, c).real());
        os << ", ";
        write_number(os, m(r, c).imag());
        os << "]";
      }
      os << "]";
    }
    os << "\n    ]";
  }
  os << (w.matrices.empty() ? "],\n" : "\n  ],\n");
  os << "  \"metadata\": {";
  bool first = true;
  for (const auto& [k, v] : meta) {
    os << (first ? "\n    " : ",\n    ") << json(k).dump() << ": " << json(v).dump();
    first = false;
  }
  os << (meta.empty() ? "}\n" : "\n  }\n");
  os << "}\n";
  return os.str();
}

Document from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw ParseError("document: expected a JSON object");

  const std::string version = as_string(field(root, "format_version"), "format_version");
  if (version != kFormatVersion) {
    fail("format_version", "unsupported version '" + version + "'");
  }
  Wire w;
  w.kind = as_string(field(root, "kind"), "kind");

  const json& systems = field(root, "systems");
  if (!systems.is_array()) fail("systems", "expected an array");
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const std::string where = "systems[" + std::to_string(i) + "]";
    const json& s = systems[i];
    if (!s.is_object()) fail(where, "expected an object");
    const std::string name = as_string(field(s, "name"), where + ".name");
    const json& dim = field(s, "dim");
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 1) {
      fail(where + ".dim", "expected a positive integer");
    }
    const std::string role = as_string(field(s, "role"), where + ".role");
    if (role != "input" && role != "output") {
      fail(where + ".role", "expected \"input\" or \"output\"");
    }
    w.systems.push_back({{name, dim.get<std::size_t>()},
                         role == "input" ? Role::kInput : Role::kOutput});
  }

  const json& matrices = field(root, "matrices");
  if (!matrices.is_array()) fail("matrices", "expected an array");
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    w.matrices.push_back(parse_matrix(matrices[k], "matrices[" + std::to_string(k) + "]"));
  }

  Document doc;
  if (auto it = root.find("metadata"); it != root.end()) {
    if (!it->is_object()) fail("metadata", "expected an object");
    for (const auto& [k, v] : it->items()) {
      doc.metadata[k] = as_string(v, "metadata." + k);
    }
  }
  w.extra = doc.metadata;
  doc.object = from_wire(w);
  // Keys the object itself carries are not kept as free-form metadata.
  if (std::holds_alternative<StinespringRep>(doc.object)) {
    doc.metadata.erase("environment");
  }
  return doc;
}

void save_document(const Document& doc, const std::string& path) {
  const std::string text = to_json(doc);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace choikit
