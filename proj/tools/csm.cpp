// Copyright 2026 The CSM Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csm/class_forest.hpp"
#include "csm/gadgets.hpp"
#include "csm/generator.hpp"
#include "csm/io.hpp"
#include "csm/many_to_many.hpp"
#include "csm/order_type.hpp"
#include "csm/packing.hpp"
#include "csm/polytope.hpp"
#include "csm/separation.hpp"
#include "csm/solver.hpp"
#include "csm/stability.hpp"

using json = nlohmann::ordered_json;
using namespace csm;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;

struct Globals {
  std::string input;
  std::string output;
  std::string format = "text";
  long cap = kDefaultCap;
  bool trace = false;
  std::uint64_t seed = 1;

  bool machine() const { return format == "machine"; }
};

class Out {
 public:
  explicit Out(const Globals& g) : path_(g.output) {}
  std::ostream& stream() { return path_.empty() ? std::cout : buf_; }
  ~Out() {
    if (!path_.empty()) write_file(path_, buf_.str());
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

Instance load(const Globals& g) {
  if (g.input.empty()) throw CLI::RequiredError("--input");
  return load_instance(g.input);
}

json matching_json(const Instance& inst, const Matching& m) {
  json doc = json::array();
  auto groups = by_institute(inst, m);
  for (int i = 0; i < inst.num_institutes(); ++i) {
    json members = json::array();
    for (int a : groups[i]) members.push_back(inst.applicant(a).id);
    doc.push_back({{"institute", inst.institute(i).id}, {"applicants", members}});
  }
  return doc;
}

std::string node_name(const Instance& inst, const ClassForest& forest, int node) {
  const ClassNode& n = forest.node(node);
  switch (n.kind) {
    case NodeKind::kRoot:
      return "capacity";
    case NodeKind::kLeaf:
      return "leaf " + inst.applicant(n.members.front()).id;
    default:
      return "class #" + std::to_string(n.declared.front() + 1);
  }
}

const std::pair<ConstraintKind, const char*> kConstraintNames[] = {
    {ConstraintKind::kRow, "row"},
    {ConstraintKind::kClass, "class"},
    {ConstraintKind::kComb, "comb"},
    {ConstraintKind::kNonNegative, "sign"},
    {ConstraintKind::kClassTuple, "class-tuple"}};

std::string constraint_name(ConstraintKind kind) {
  for (auto [k, label] : kConstraintNames)
    if (k == kind) return label;
  return "unknown";
}

int run_solve(const Globals& g) {
  Instance inst = load(g);
  SolveOptions opts;
  opts.trace = g.trace;
  SolveResult r = solve(inst, opts);
  auto forests = preprocess(inst);
  Out out(g);
  auto& os = out.stream();
  if (g.machine()) {
    json doc;
    doc["stable"] = r.matching.has_value();
    if (r.matching)
      doc["matching"] = matching_json(inst, *r.matching);
    else
      doc["reason"] = r.reason;
    doc["proposals"] = r.proposals;
    if (g.trace) {
      json props = json::array(), rejs = json::array();
      for (const auto& p : r.trace)
        props.push_back({inst.applicant(p.applicant).id, inst.institute(p.institute).id});
      for (const auto& rj : r.rejections)
        rejs.push_back({inst.applicant(rj.applicant).id, inst.institute(rj.institute).id,
                        node_name(inst, forests[rj.institute], rj.node)});
      doc["trace"] = props;
      doc["rejections"] = rejs;
    }
    os << doc.dump(2) << "\n";
  } else {
    if (g.trace) {
      for (const auto& p : r.trace)
        os << "propose " << inst.applicant(p.applicant).id << " -> "
           << inst.institute(p.institute).id << "\n";
      for (const auto& rj : r.rejections)
        os << "reject " << inst.applicant(rj.applicant).id << " at "
           << inst.institute(rj.institute).id << " by "
           << node_name(inst, forests[rj.institute], rj.node) << "\n";
    }
    if (r.matching)
      os << format_matching(inst, *r.matching) << "\n";
    else
      os << "no stable matching: " << r.reason << "\n";
  }
  return r.matching ? kOk : kNegative;
}

int run_verify(const Globals& g, const std::string& matching_path) {
  Instance inst = load(g);
  Matching m = parse_matching(read_file(matching_path), inst);
  Out out(g);
  auto& os = out.stream();
  std::string verdict = "stable", detail;
  if (auto v = check_feasibility(inst, m)) {
    verdict = "infeasible";
    detail = v->message;
  } else if (auto bg = find_blocking_group(inst, m, g.cap)) {
    verdict = "blocked";
    detail = "institute " + inst.institute(bg->institute).id + " with {";
    for (size_t k = 0; k < bg->members.size(); ++k)
      detail += (k ? ", " : "") + inst.applicant(bg->members[k]).id;
    detail += "}";
  }
  if (g.machine())
    os << json{{"verdict", verdict}, {"detail", detail}}.dump(2) << "\n";
  else
    os << verdict << (detail.empty() ? "" : ": " + detail) << "\n";
  return verdict == "stable" ? kOk : kNegative;
}

int run_enumerate(const Globals& g) {
  Instance inst = load(g);
  auto all = enumerate_stable(inst, g.cap);
  Out out(g);
  auto& os = out.stream();
  if (g.machine()) {
    json doc = json::array();
    for (const auto& m : all) doc.push_back(matching_json(inst, m));
    os << json{{"count", all.size()}, {"matchings", doc}}.dump(2) << "\n";
  } else {
    os << all.size() << " stable matching" << (all.size() == 1 ? "" : "s") << "\n";
    for (const auto& m : all) os << "size " << matching_size(m) << ": " << format_matching(inst, m) << "\n";
  }
  return all.empty() ? kNegative : kOk;
}

int run_rural(const Globals& g) {
  Instance inst = load(g);
  auto all = enumerate_stable(inst, g.cap);
  RuralReport rep = rural_report(inst, all);
  Out out(g);
  auto& os = out.stream();
  if (g.machine()) {
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    os << json{{"laminar", rep.laminar}, {"stable_matchings", all.size()}, {"checks", checks}}.dump(2)
       << "\n";
  } else {
    os << all.size() << " stable matchings, " << (rep.laminar ? "laminar" : "not laminar") << "\n";
    for (const auto& c : rep.checks)
      os << (c.pass ? "PASS " : "FAIL ") << c.name << (c.witness.empty() ? "" : ": " + c.witness) << "\n";
  }
  return rep.all_pass() ? kOk : kNegative;
}

int run_check_point(const Globals& g, const std::string& point_path) {
  Instance inst = load(g);
  FractionalMatching x = parse_point(read_file(point_path), inst);
  auto forests = preprocess(inst);
  ConstraintReport rep = evaluate(inst, x, g.cap);
  auto sep = separate(inst, x);
  Out out(g);
  auto& os = out.stream();
  if (g.machine()) {
    json vs = json::array();
    for (const auto& v : rep.violations)
      vs.push_back({{"constraint", constraint_name(v.kind)},
                    {"description", describe(inst, forests, v)},
                    {"lhs", to_string(v.lhs)},
                    {"rhs", to_string(v.rhs)},
                    {"slack", to_string(v.slack)}});
    json doc{{"member", rep.satisfied()}, {"violations", vs}};
    doc["separation"] = sep ? json(describe(inst, forests, *sep)) : json(nullptr);
    os << doc.dump(2) << "\n";
  } else {
    for (auto [kind, label] : kConstraintNames)
      os << label << ": " << (rep.satisfies(kind) ? "satisfied" : "violated") << "\n";
    for (const auto& v : rep.violations)
      os << "violated: " << describe(inst, forests, v) << "\n";
    os << "separation: " << (sep ? describe(inst, forests, *sep) : std::string("none")) << "\n";
  }
  return rep.satisfied() && !sep ? kOk : kNegative;
}

int run_pack(const Globals& g, const std::string& point_path, const std::string& alpha) {
  Instance inst = load(g);
  FractionalMatching x = parse_point(read_file(point_path), inst);
  BinState state = pack(inst, x);
  Out out(g);
  auto& os = out.stream();
  if (!alpha.empty()) {
    Rational a = parse_rational(alpha);
    if (a < 0 || a >= 1) throw CLI::ValidationError("--alpha", "must lie in [0, 1)");
    Matching m = cut(inst, state, a);
    if (g.machine())
      os << json{{"alpha", to_string(a)}, {"matching", matching_json(inst, m)}}.dump(2) << "\n";
    else
      os << format_matching(inst, m) << "\n";
    return kOk;
  }
  json doc = json::array();
  for (int i = 0; i < inst.num_institutes(); ++i) {
    const auto& bins = state.institutes[i].bins;
    json jb = json::array();
    for (size_t j = 0; j < bins.size(); ++j) {
      json items = json::array();
      for (const auto& it : bins[j].items)
        items.push_back({{"applicant", inst.applicant(it.applicant).id},
                         {"offset", to_string(it.offset)},
                         {"height", to_string(it.height)}});
      jb.push_back(items);
      if (!g.machine()) {
        os << inst.institute(i).id << " bin " << j + 1 << ":";
        for (const auto& it : bins[j].items)
          os << " " << inst.applicant(it.applicant).id << "[" << to_string(it.offset) << ", "
             << to_string(it.offset + it.height) << ")";
        os << "\n";
      }
    }
    doc.push_back({{"institute", inst.institute(i).id}, {"bins", jb}});
  }
  if (g.machine()) os << json{{"phases", state.phases}, {"institutes", doc}}.dump(2) << "\n";
  return kOk;
}

int run_decompose(const Globals& g, const std::string& point_path) {
  Instance inst = load(g);
  FractionalMatching x = parse_point(read_file(point_path), inst);
  auto parts = decompose(inst, x);
  Out out(g);
  auto& os = out.stream();
  if (g.machine()) {
    json doc = json::array();
    for (const auto& [m, w] : parts) doc.push_back({{"weight", to_string(w)}, {"matching", matching_json(inst, m)}});
    os << doc.dump(2) << "\n";
  } else {
    for (const auto& [m, w] : parts) os << to_string(w) << "  " << format_matching(inst, m) << "\n";
  }
  return kOk;
}

int run_median(const Globals& g, const std::vector<std::string>& files) {
  Instance inst = load(g);
  std::vector<Matching> ms;
  for (const auto& f : files) ms.push_back(parse_matching(read_file(f), inst));
  Matching m = median(inst, ms);
  Out out(g);
  if (g.machine())
    out.stream() << json{{"median", matching_json(inst, m)}}.dump(2) << "\n";
  else
    out.stream() << format_matching(inst, m) << "\n";
  return kOk;
}

int run_reduce(const Globals& g, const std::string& kind) {
  if (g.input.empty()) throw CLI::RequiredError("--input");
  Out out(g);
  if (kind == "m2m") {
    auto [inst, clones] = clone_m2m(parse_m2m(read_file(g.input)));
    out.stream() << serialize_instance(to_raw(inst));
    return kOk;
  }
  SatFormula f = parse_formula(read_file(g.input));
  GadgetInstance gi = sat_to_csm(f);
  validate(gi.raw);
  out.stream() << serialize_instance(gi.raw);
  std::cerr << gi.pair_gadgets << " pair gadgets, " << gi.tbar_gadgets << " T-bar gadgets, "
            << gi.clause_gadgets << " clause gadgets\n";
  return kOk;
}

int run_gadget_check(const Globals& g) {
  std::optional<SatFormula> f;
  if (!g.input.empty()) f = parse_formula(read_file(g.input));
  GadgetReport rep = verify_gadgets(f ? &*f : nullptr, g.cap);
  Out out(g);
  auto& os = out.stream();
  auto status = [](CheckStatus s) {
    return s == CheckStatus::kPass ? "PASS" : s == CheckStatus::kFail ? "FAIL" : "SKIP";
  };
  if (g.machine()) {
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"status", status(c.status)}, {"detail", c.detail}});
    os << json{{"pass", rep.binding_pass()}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks)
      os << status(c.status) << " " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
  return rep.binding_pass() ? kOk : kNegative;
}

int run_poset(const Globals& g) {
  Instance inst = load(g);
  Out out(g);
  auto& os = out.stream();
  json doc = json::array();
  for (int i = 0; i < inst.num_institutes(); ++i) {
    InclusionPoset poset = inclusion_poset(inst.institute(i));
    OrderType t = classify_order_type(poset);
    auto name = [&](int e) {
      std::string s = "{";
      for (size_t k = 0; k < poset.elements[e].size(); ++k)
        s += (k ? ", " : "") + inst.applicant(poset.elements[e][k]).id;
      return s + "}";
    };
    json elems = json::array();
    for (int e = 0; e < poset.size(); ++e) elems.push_back(name(e));
    json entry{{"institute", inst.institute(i).id}, {"elements", elems},
               {"downward_forest", t.downward_forest}};
    if (!t.downward_forest) entry["v"] = {name(t.bottom), name(t.left), name(t.right)};
    doc.push_back(entry);
    if (!g.machine()) {
      os << inst.institute(i).id << ": " << poset.size() << " elements, ";
      if (t.downward_forest)
        os << "downward forest\n";
      else
        os << "has V: " << name(t.bottom) << " below " << name(t.left) << " and " << name(t.right) << "\n";
    }
  }
  if (g.machine()) os << doc.dump(2) << "\n";
  return kOk;
}

int run_gen(const Globals& g, GenConfig cfg) {
  cfg.seed = g.seed;
  if (cfg.institutes < 0 || cfg.applicants < 0) throw CLI::ValidationError("counts must be non-negative");
  if (cfg.min_capacity < 1 || cfg.min_capacity > cfg.max_capacity)
    throw CLI::ValidationError("capacity range is empty");
  if (cfg.density < 0 || cfg.density > 1) throw CLI::ValidationError("--density must lie in [0, 1]");
  RawInstance raw = generate(cfg);
  if (!cfg.non_laminar) validate(raw);
  Out out(g);
  out.stream() << serialize_instance(raw);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classified stable matching toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--input,-i", g.input, "Input file");
  app.add_option("--output,-o", g.output, "Write the report to this file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--cap", g.cap, "Search size cap")->check(CLI::PositiveNumber);
  app.add_flag("--trace", g.trace, "Print the proposal and rejection log");
  app.add_option("--seed", g.seed, "Random seed");

  std::string matching_path, point_path, alpha, reduce_kind;
  std::vector<std::string> matching_files;
  GenConfig cfg;

  auto* solve_cmd = app.add_subcommand("solve", "Compute the applicant-optimal stable matching");
  auto* verify_cmd = app.add_subcommand("verify", "Check a matching for stability");
  verify_cmd->add_option("--matching,-m", matching_path, "Matching file")->required();
  auto* enum_cmd = app.add_subcommand("enumerate", "List every stable matching");
  auto* rural_cmd = app.add_subcommand("rural", "Check the rural hospitals properties");
  auto* point_cmd = app.add_subcommand("check-point", "Evaluate a fractional point");
  point_cmd->add_option("--point,-x", point_path, "Fractional matching file")->required();
  auto* pack_cmd = app.add_subcommand("pack", "Pack a fractional point into bins");
  pack_cmd->add_option("--point,-x", point_path, "Fractional matching file")->required();
  pack_cmd->add_option("--alpha", alpha, "Cut height p/q in [0, 1)");
  auto* dec_cmd = app.add_subcommand("decompose", "Write a point as a convex combination");
  dec_cmd->add_option("--point,-x", point_path, "Fractional matching file")->required();
  auto* med_cmd = app.add_subcommand("median", "Median of stable matchings");
  med_cmd->add_option("matchings", matching_files, "Matching files")->required();
  auto* red_cmd = app.add_subcommand("reduce", "Build an instance from another problem");
  red_cmd->add_option("kind", reduce_kind, "m2m or sat")->required()->check(CLI::IsMember({"m2m", "sat"}));
  auto* gad_cmd = app.add_subcommand("gadget-check", "Verify the reduction gadgets");
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--institutes", cfg.institutes);
  gen_cmd->add_option("--applicants", cfg.applicants);
  gen_cmd->add_option("--density", cfg.density);
  gen_cmd->add_option("--depth", cfg.max_depth);
  gen_cmd->add_option("--min-capacity", cfg.min_capacity);
  gen_cmd->add_option("--max-capacity", cfg.max_capacity);
  gen_cmd->add_option("--class-prob", cfg.class_probability);
  gen_cmd->add_option("--lower-prob", cfg.lower_probability);
  gen_cmd->add_flag("--non-laminar", cfg.non_laminar);
  auto* poset_cmd = app.add_subcommand("poset", "Inclusion poset and order type per institute");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
    if (*solve_cmd) return run_solve(g);
    if (*verify_cmd) return run_verify(g, matching_path);
    if (*enum_cmd) return run_enumerate(g);
    if (*rural_cmd) return run_rural(g);
    if (*point_cmd) return run_check_point(g, point_path);
    if (*pack_cmd) return run_pack(g, point_path, alpha);
    if (*dec_cmd) return run_decompose(g, point_path);
    if (*med_cmd) return run_median(g, matching_files);
    if (*red_cmd) return run_reduce(g, reduce_kind);
    if (*gad_cmd) return run_gadget_check(g);
    if (*gen_cmd) return run_gen(g, cfg);
    if (*poset_cmd) return run_poset(g);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid instance:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kUsage;
  } catch (const NotLaminar& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const SizeCapExceeded& e) {
    std::cerr << "size cap exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const PackingError& e) {
    std::cerr << "packing failed: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
