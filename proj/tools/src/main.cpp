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

// choikit command-line tool.
//
// Exit codes: 0 when the requested operation or check succeeded, 2 when an
// input failed a validity check, 1 for usage, parse and I/O errors.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choikit/breaking.hpp"
#include "choikit/channel.hpp"
#include "choikit/io.hpp"
#include "choikit/superchannel.hpp"
#include "report.hpp"

namespace choikit::cli {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  double tol = 1e-9;
  double rank_rtol = 1e-9;
  std::uint64_t seed = 0;
  std::string out;
  Format format = Format::kText;
};

bool is_channel(const DocumentObject& obj) {
  return std::holds_alternative<ChoiRep>(obj) || std::holds_alternative<KrausRep>(obj) ||
         std::holds_alternative<StinespringRep>(obj) || std::holds_alternative<LiouvilleRep>(obj);
}

bool is_superchannel(const DocumentObject& obj) {
  return std::holds_alternative<SuperchannelChoi>(obj) || std::holds_alternative<GourOperator>(obj);
}

AnyChannel as_channel(const Document& doc, const std::string& what) {
  return std::visit(
      [&](const auto& x) -> AnyChannel {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ChoiRep> || std::is_same_v<T, KrausRep> ||
                      std::is_same_v<T, StinespringRep> || std::is_same_v<T, LiouvilleRep>) {
          return x;
        } else {
          throw UsageError(what + " must be a channel document, got '" + kind_of(doc.object) + "'");
        }
      },
      doc.object);
}

SuperchannelChoi as_superchannel(const Document& doc, const std::string& what) {
  if (const auto* s = std::get_if<SuperchannelChoi>(&doc.object)) return *s;
  if (const auto* g = std::get_if<GourOperator>(&doc.object)) return choi_from_gour(g->op, g->dims);
  throw UsageError(what + " must be a superchannel document, got '" + kind_of(doc.object) + "'");
}

void emit(const Document& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << to_json(doc);
  } else {
    save_document(doc, path);
  }
}

// Errors raised because an input failed a numerical check rather than
// because it was malformed.
bool is_validity_failure(const Error& e) {
  return dynamic_cast<const InvalidChannel*>(&e) || dynamic_cast<const NotAValidSuperchannel*>(&e) ||
         dynamic_cast<const ResidualTooLarge*>(&e) || dynamic_cast<const NotPSD*>(&e) ||
         dynamic_cast<const NotTP*>(&e) || dynamic_cast<const NotIsometry*>(&e) ||
         dynamic_cast<const NotHermitian*>(&e) || dynamic_cast<const IncompleteDecomposition*>(&e);
}

SuperchannelDims parse_dims(const std::vector<std::size_t>& d) {
  if (d.size() != 4) throw UsageError("--dims takes four values: A1 A2 B1 B2");
  return make_dims(d[0], d[1], d[2], d[3]);
}

// ---------------------------------------------------------------------------
// Subcommands

int run_validate(const Globals& g, const std::string& path) {
  const Document doc = load_document(path);
  Report r;
  r.set("kind", kind_of(doc.object));
  bool ok = false;
  if (is_channel(doc.object)) {
    const ChannelValidityReport v = validate_channel(to_choi(as_channel(doc, "input"), g.tol), g.tol);
    ok = v.valid();
    r.nest("channel", channel_report(v));
  } else if (is_superchannel(doc.object)) {
    const SuperchannelValidityReport v = validate_superchannel(as_superchannel(doc, "input"), g.tol);
    ok = v.valid();
    r.nest("superchannel", superchannel_report(v));
  } else if (const auto* mp = std::get_if<MeasurePrepare>(&doc.object)) {
    ok = mp->completeness_deviation <= g.tol;
    r.set("valid", ok).set("completeness_deviation", mp->completeness_deviation).set("tol", g.tol);
  } else {
    throw UsageError("nothing to validate for kind 'operator'");
  }
  r.print(std::cout, g.format);
  return ok ? kOk : kInvalid;
}

int run_convert(const Globals& g, const std::string& path, const std::string& to) {
  const Document doc = load_document(path);
  const AnyChannel ch = as_channel(doc, "input");
  const auto converted = [&]() -> DocumentObject {
    if (to == "choi-channel" || to == "choi") return to_choi(ch, g.tol);
    if (to == "kraus-channel" || to == "kraus") return to_kraus(ch, g.tol, g.rank_rtol);
    if (to == "stinespring") return to_stinespring(ch, g.tol, g.rank_rtol);
    if (to == "liouville") return to_liouville(ch, g.tol, g.rank_rtol);
    throw UsageError("unknown target representation '" + to + "'");
  };
  const Document out{converted(), doc.metadata};
  emit(out, g.out);
  return kOk;
}

int run_apply(const Globals& g, const std::string& first, const std::string& second) {
  const Document a = load_document(first), b = load_document(second);
  if (is_superchannel(a.object)) {
    const ChoiRep e = to_choi(as_channel(b, "second argument"), g.tol);
    emit({apply_to_channel(as_superchannel(a, "first argument"), e, g.tol), {}}, g.out);
    return kOk;
  }
  if (is_channel(a.object)) {
    const auto* rho = std::get_if<LabeledOperator>(&b.object);
    if (rho == nullptr) throw UsageError("a channel is applied to an operator document");
    emit({apply_channel(as_channel(a, "first argument"), *rho), {}}, g.out);
    return kOk;
  }
  throw UsageError("first argument must be a superchannel or a channel");
}

int run_compose(const Globals& g, const std::string& outer, const std::string& inner) {
  const ChoiRep e2 = to_choi(as_channel(load_document(outer), "outer channel"), g.tol);
  const ChoiRep e1 = to_choi(as_channel(load_document(inner), "inner channel"), g.tol);
  emit({compose_channels(e2, e1), {}}, g.out);
  return kOk;
}

int run_gour(const Globals& g, const std::string& path, bool inverse) {
  const Document doc = load_document(path);
  if (inverse) {
    const auto* go = std::get_if<GourOperator>(&doc.object);
    if (go == nullptr) throw UsageError("--inverse expects a gour document");
    emit({choi_from_gour(go->op, go->dims), doc.metadata}, g.out);
  } else {
    const auto* s = std::get_if<SuperchannelChoi>(&doc.object);
    if (s == nullptr) throw UsageError("expected a superchannel-choi document");
    emit({GourOperator{gour_from_choi(*s), s->dims()}, doc.metadata}, g.out);
  }
  return kOk;
}

int run_realize(const Globals& g, const std::string& path) {
  const Realization r = realize(as_superchannel(load_document(path), "input"), g.tol, g.rank_rtol);
  Report rep;
  rep.set("memory_dim", r.e1_dim)
      .set("environment_dim", r.e2_dim)
      .set("reconstruction_residual", r.reconstruction_residual)
      .set("isometry_deviation", r.isometry_deviation);
  if (!g.out.empty()) {
    const std::string v_path = g.out + ".V.json", w_path = g.out + ".W.json";
    save_document({r.v, {{"role", "pre-processing isometry"}}}, v_path);
    save_document({r.w, {{"role", "post-processing isometry"}}}, w_path);
    rep.set("v_path", v_path).set("w_path", w_path);
  }
  rep.print(std::cout, g.format);
  return kOk;
}

int run_memory_cost(const Globals& g, const std::string& path) {
  const SuperchannelChoi theta = as_superchannel(load_document(path), "input");
  const SuperchannelValidityReport v = validate_superchannel(theta, g.tol);
  if (!v.valid()) throw NotAValidSuperchannel("input fails the superchannel conditions");
  const MemoryCostReport m = memory_cost_report(theta, g.tol, g.rank_rtol);
  Report r;
  r.set("memory_cost", m.eq_rank).set("eq_rank", m.eq_rank).set("f_theta_rank", m.f_theta_rank);
  r.print(std::cout, g.format);
  return kOk;
}

int run_breaking(const Globals& g, const std::string& path) {
  const Document doc = load_document(path);
  Report r;
  if (is_superchannel(doc.object)) {
    const BreakingReport b = superchannel_breaking_report(as_superchannel(doc, "input"), g.tol);
    r.nest("type_i", ppt_report(b.type_i))
        .nest("type_ii", ppt_report(b.type_ii))
        .set("common_cause_breaking", b.common_cause_breaking);
  } else {
    const EbChannelReport e = eb_channel_report(to_choi(as_channel(doc, "input"), g.tol), g.tol);
    r.set("verdict", std::string(to_string(e.verdict))).nest("ppt", ppt_report(e.ppt));
  }
  r.print(std::cout, g.format);
  return kOk;
}

struct GenOptions {
  std::size_t din = 2, dout = 2, rank = 0;
  std::vector<std::size_t> dims{2, 2, 2, 2};
  std::size_t memory = 1, pre_rank = 0, post_rank = 0, terms = 2, dim = 2;
  double p = 0.5;
};

int run_gen(const Globals& g, const std::string& what, const GenOptions& o) {
  Metadata meta{{"generator", what}, {"seed", std::to_string(g.seed)}};
  if (what == "channel") {
    const std::size_t rank = o.rank == 0 ? o.din : o.rank;
    emit({random_channel(o.din, o.dout, rank, g.seed), meta}, g.out);
  } else if (what == "superchannel") {
    emit({random_superchannel(parse_dims(o.dims), o.memory, g.seed, o.pre_rank, o.post_rank), meta},
         g.out);
  } else if (what == "eb-superchannel") {
    emit({random_eb_superchannel(parse_dims(o.dims), o.terms, g.seed, g.tol).theta, meta}, g.out);
  } else if (what == "type1-example") {
    meta.erase("seed");
    emit({example_type1_not_type2(o.dim), meta}, g.out);
  } else if (what == "depolarizing") {
    meta.erase("seed");
    meta["p"] = std::to_string(o.p);
    emit({depolarizing_channel(o.p, o.dim), meta}, g.out);
  } else {
    throw UsageError("unknown generator '" + what + "'");
  }
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Quantum channels and superchannels in the Choi picture"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::string format = "text";
  app.add_option("--tol", g.tol, "Numerical tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--rank-rtol", g.rank_rtol, "Relative cutoff for numerical rank")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for generators")->capture_default_str();
  app.add_option("--out", g.out, "Output path (documents go to stdout when empty)");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string file, file2, to;
  bool inverse = false;

  auto* validate = app.add_subcommand("validate", "Check channel or superchannel conditions");
  validate->add_option("file", file)->required();

  auto* convert = app.add_subcommand("convert", "Convert between channel representations");
  convert->add_option("file", file)->required();
  convert->add_option("--to", to, "choi-channel, kraus-channel, stinespring or liouville")
      ->required();

  auto* apply = app.add_subcommand("apply", "Apply a superchannel to a channel, or a channel to an operator");
  apply->add_option("first", file)->required();
  apply->add_option("second", file2)->required();

  auto* compose = app.add_subcommand("compose", "Sequential composition: outer after inner");
  compose->add_option("outer", file)->required();
  compose->add_option("inner", file2)->required();

  auto* gour = app.add_subcommand("gour", "Choi to Gour operator, or back with --inverse");
  gour->add_option("file", file)->required();
  gour->add_flag("--inverse", inverse);

  auto* realize_cmd = app.add_subcommand("realize", "Sequential realization with minimal memory");
  realize_cmd->add_option("file", file)->required();

  auto* memory = app.add_subcommand("memory-cost", "Minimal memory dimension");
  memory->add_option("file", file)->required();

  auto* breaking = app.add_subcommand("breaking", "Entanglement-breaking analysis");
  breaking->add_option("file", file)->required();

  std::string what;
  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate example documents");
  gen->add_option("what", what, "channel, superchannel, eb-superchannel, type1-example, depolarizing")
      ->required()
      ->check(CLI::IsMember(
          {"channel", "superchannel", "eb-superchannel", "type1-example", "depolarizing"}));
  gen->add_option("--din", gen_opts.din, "Channel input dimension")->capture_default_str();
  gen->add_option("--dout", gen_opts.dout, "Channel output dimension")->capture_default_str();
  gen->add_option("--rank", gen_opts.rank, "Kraus rank (0 selects the input dimension)");
  gen->add_option("--dims", gen_opts.dims, "Superchannel dimensions A1 A2 B1 B2")
      ->expected(4)
      ->delimiter(',');
  gen->add_option("--memory", gen_opts.memory, "Memory dimension")->capture_default_str();
  gen->add_option("--pre-rank", gen_opts.pre_rank, "Kraus rank of the pre-processing part");
  gen->add_option("--post-rank", gen_opts.post_rank, "Kraus rank of the post-processing part");
  gen->add_option("--terms", gen_opts.terms, "Outcomes per measurement stage")
      ->capture_default_str();
  gen->add_option("--dim", gen_opts.dim, "Local dimension")->capture_default_str();
  gen->add_option("--p", gen_opts.p, "Depolarizing weight")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  g.format = format == "json" ? Format::kJson : Format::kText;

  try {
    if (*validate) return run_validate(g, file);
    if (*convert) return run_convert(g, file, to);
    if (*apply) return run_apply(g, file, file2);
    if (*compose) return run_compose(g, file, file2);
    if (*gour) return run_gour(g, file, inverse);
    if (*realize_cmd) return run_realize(g, file);
    if (*memory) return run_memory_cost(g, file);
    if (*breaking) return run_breaking(g, file);
    if (*gen) return run_gen(g, what, gen_opts);
  } catch (const Error& e) {
    if (is_validity_failure(e)) {
      std::cerr << "invalid: " << e.what() << '\n';
      return kInvalid;
    }
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace choikit::cli

int main(int argc, char** argv) { return choikit::cli::run(argc, argv); }
