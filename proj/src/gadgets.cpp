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

#include "csm/gadgets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "csm/stability.hpp"

namespace csm {

SatFormula parse_formula(const std::string& text) {
  SatFormula f;
  std::map<std::string, int> index;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty() || tokens[0][0] == '#' || tokens[0] == "c") continue;
    if (tokens.size() != 3)
      throw MalformedClause("line " + std::to_string(line_no) + ": expected three variables, got " +
                            std::to_string(tokens.size()));
    std::vector<int> clause;
    for (const auto& t : tokens) {
      if (t[0] == '-' || t[0] == '!' || t[0] == '~')
        throw MalformedClause("line " + std::to_string(line_no) + ": negative literal '" + t + "'");
      auto [it, fresh] = index.emplace(t, static_cast<int>(f.variables.size()));
      if (fresh) f.variables.push_back(t);
      clause.push_back(it->second);
    }
    if (std::set<int>(clause.begin(), clause.end()).size() != 3)
      throw MalformedClause("line " + std::to_string(line_no) + ": repeated variable");
    f.clauses.push_back(clause);
  }
  return f;
}

bool one_in_three_satisfiable(const SatFormula& formula) {
  const int n = static_cast<int>(formula.variables.size());
  if (n > 30) throw SizeCapExceeded("too many variables for exhaustive search");
  for (long mask = 0; mask < (1L << n); ++mask) {
    bool ok = true;
    for (const auto& c : formula.clauses) {
      int on = 0;
      for (int v : c) on += (mask >> v) & 1;
      if (on != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

namespace {

const char* kTbarIds[] = {"ab1", "ab2", "ab3", "ab4", "ab5", "ab6"};

// Lists of the T-bar gadget. Role 0 stands for T1 and roles 1..3 for T2..T4.
const int kApplicantLists[6][4] = {
    {3, 0, 2, 1}, {2, 3, 1, 0}, {3, 2, 0, 1}, {3, 0, 1, 2}, {1, 3, 2, 0}, {1, 3, 2, 0}};
const int kInstituteLists[4][6] = {
    {5, 2, 4, 6, 3, 1}, {4, 6, 2, 3, 1, 5}, {4, 5, 6, 3, 1, 2}, {4, 1, 6, 2, 3, 5}};

struct Builder {
  GadgetInstance out;
  void institute(const Id& id, int q, std::vector<Id> prefs, std::vector<RawClass> classes,
                 const std::string& tag) {
    out.raw.institutes.push_back({id, q, std::move(prefs), std::move(classes)});
    out.provenance[id] = tag;
  }
  void applicant(const Id& id, std::vector<Id> prefs, const std::string& tag) {
    out.raw.applicants.push_back({id, std::move(prefs)});
    out.provenance[id] = tag;
  }
};

// Appends the T-bar members. `t1` names the institute playing T1, or is
// empty to strike it.
void add_tbar(Builder& b, const std::string& prefix, const Id& t1, const std::string& tag,
              bool add_t1_institute) {
  auto ab = [&](int k) { return prefix + kTbarIds[k - 1]; };
  auto inst = [&](int role) { return role == 0 ? t1 : prefix + "T" + std::to_string(role + 1); };
  for (int k = 0; k < 6; ++k) {
    std::vector<Id> prefs;
    for (int role : kApplicantLists[k])
      if (role != 0 || !t1.empty()) prefs.push_back(inst(role));
    b.applicant(ab(k + 1), prefs, tag);
  }
  if (add_t1_institute) {
    std::vector<Id> prefs;
    for (int k : kInstituteLists[0]) prefs.push_back(ab(k));
    b.institute(t1, 2, prefs, {}, tag);
  }
  for (int role = 1; role <= 3; ++role) {
    std::vector<Id> prefs;
    for (int k : kInstituteLists[role]) prefs.push_back(ab(k));
    b.institute(inst(role), 2, prefs, {{{ab(1), ab(2), ab(3)}, 1, 0}, {{ab(3), ab(4), ab(5)}, 1, 0}},
                tag);
  }
}

}  // namespace

RawInstance tbar_component(bool with_t1) {
  Builder b;
  add_tbar(b, "", with_t1 ? "T1" : "", "tbar", with_t1);
  // Institutes in T1..T4 order.
  return b.out.raw;
}

Matching tbar_feature_b(const Instance& tbar) {
  Matching m = empty_matching(tbar);
  const std::pair<const char*, const char*> pairs[] = {{"ab6", "T2"}, {"ab3", "T2"},
                                                       {"ab5", "T3"}, {"ab2", "T3"},
                                                       {"ab4", "T4"}, {"ab1", "T4"}};
  for (auto [a, i] : pairs) m[*tbar.find_applicant(a)] = *tbar.find_institute(i);
  return m;
}

RawInstance pair_component() {
  RawInstance raw;
  raw.institutes.push_back(
      {"Ii", 2, {"ai2", "ai1", "aj2", "aj1"}, {{{"ai1", "ai2"}, 1, 0}, {{"ai1", "aj1"}, 1, 0}}});
  raw.institutes.push_back({"Ij", 2, {"ai1", "ai2", "aj1", "aj2"}, {{{"ai1", "ai2"}, 1, 0}}});
  raw.applicants.push_back({"ai1", {"Ii", "Ij"}});
  raw.applicants.push_back({"ai2", {"Ij", "Ii"}});
  raw.applicants.push_back({"aj1", {"Ii", "Ij"}});
  raw.applicants.push_back({"aj2", {"Ij", "Ii"}});
  return raw;
}

std::vector<Matching> pair_outcomes(const Instance& pair) {
  const int ii = *pair.find_institute("Ii"), ij = *pair.find_institute("Ij");
  auto at = [&](int ai1, int ai2, int aj1, int aj2) {
    Matching m = empty_matching(pair);
    m[*pair.find_applicant("ai1")] = ai1;
    m[*pair.find_applicant("ai2")] = ai2;
    m[*pair.find_applicant("aj1")] = aj1;
    m[*pair.find_applicant("aj2")] = aj2;
    return m;
  };
  std::vector<Matching> out = {at(ii, ij, ij, ii), at(ij, ii, ii, ij), at(ij, ii, ij, ii)};
  std::sort(out.begin(), out.end());
  return out;
}

GadgetInstance sat_to_csm(const SatFormula& formula) {
  Builder b;
  const int k = static_cast<int>(formula.clauses.size());
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  auto clause_prefix = [](int j) { return "c" + std::to_string(j + 1) + "."; };
  auto pair_prefix = [&](int j, int p) {
    return clause_prefix(j) + "p" + std::to_string(pairs[p][0] + 1) +
           std::to_string(pairs[p][1] + 1) + ".";
  };
  auto lit_applicant = [&](int j, int p, int side, int t) {
    return pair_prefix(j, p) + "a" + std::to_string(pairs[p][side] + 1) + "_" + std::to_string(t);
  };
  auto lit_institute = [&](int j, int p, int side) {
    return pair_prefix(j, p) + "I" + std::to_string(pairs[p][side] + 1);
  };
  auto hat_institute = [&](int j, int t) { return clause_prefix(j) + "Ih" + std::to_string(t); };
  auto hat_applicant = [&](int j, int t) { return clause_prefix(j) + "ah" + std::to_string(t); };

  // Gamma(a) for an applicant of literal variable v: the first clause
  // institute of every clause containing v, in clause order.
  auto gamma = [&](int v) {
    std::vector<Id> out;
    for (int j = 0; j < k; ++j)
      if (std::count(formula.clauses[j].begin(), formula.clauses[j].end(), v))
        out.push_back(hat_institute(j, 1));
    return out;
  };
  // Lambda(v): the first applicants of every pair gadget side whose literal
  // is v, in creation order.
  auto lambda = [&](int v) {
    std::vector<Id> out;
    for (int j = 0; j < k; ++j)
      for (int p = 0; p < 3; ++p)
        for (int side = 0; side < 2; ++side)
          if (formula.clauses[j][pairs[p][side]] == v) out.push_back(lit_applicant(j, p, side, 1));
    return out;
  };

  for (int j = 0; j < k; ++j) {
    for (int p = 0; p < 3; ++p) {
      const std::string tag = "pair c" + std::to_string(j + 1) + "(" +
                              std::to_string(pairs[p][0] + 1) + "," +
                              std::to_string(pairs[p][1] + 1) + ")";
      const Id ii = lit_institute(j, p, 0), ij = lit_institute(j, p, 1);
      const Id ai1 = lit_applicant(j, p, 0, 1), ai2 = lit_applicant(j, p, 0, 2);
      const Id aj1 = lit_applicant(j, p, 1, 1), aj2 = lit_applicant(j, p, 1, 2);
      auto first_list = [&](int side) {
        std::vector<Id> prefs{ii};
        for (const auto& g : gamma(formula.clauses[j][pairs[p][side]])) prefs.push_back(g);
        prefs.push_back(ij);
        return prefs;
      };
      b.applicant(ai1, first_list(0), tag);
      b.applicant(ai2, {ij, ii}, tag);
      b.applicant(aj1, first_list(1), tag);
      b.applicant(aj2, {ij, ii}, tag);

      const std::string tbar = pair_prefix(j, p) + "tb.";
      std::vector<Id> ii_prefs{ai2, ai1, aj2, aj1};
      for (int kk : kInstituteLists[0]) ii_prefs.push_back(tbar + kTbarIds[kk - 1]);
      b.institute(ii, 2, ii_prefs, {{{ai1, ai2}, 1, 0}, {{ai1, aj1}, 1, 0}}, tag);
      b.institute(ij, 2, {ai1, ai2, aj1, aj2}, {{{ai1, ai2}, 1, 0}}, tag);
      add_tbar(b, tbar, ii, "tbar c" + std::to_string(j + 1) + tag.substr(tag.find('(')), false);
      ++b.out.pair_gadgets;
      ++b.out.tbar_gadgets;
    }

    const std::string tag = "clause c" + std::to_string(j + 1);
    auto ah = [&](int t) { return hat_applicant(j, t); };
    const Id i1 = hat_institute(j, 1), i2 = hat_institute(j, 2);
    const int order[6][2] = {{2, 1}, {1, 2}, {2, 1}, {1, 2}, {2, 1}, {1, 2}};
    for (int t = 1; t <= 6; ++t)
      b.applicant(ah(t), {hat_institute(j, order[t - 1][0]), hat_institute(j, order[t - 1][1])}, tag);

    const auto& c = formula.clauses[j];
    auto l1 = lambda(c[0]), l2 = lambda(c[1]), l3 = lambda(c[2]);
    std::vector<Id> p1{ah(5), ah(1), ah(2)};
    p1.insert(p1.end(), l1.begin(), l1.end());
    p1.push_back(ah(6));
    p1.insert(p1.end(), l2.begin(), l2.end());
    p1.push_back(ah(3));
    p1.insert(p1.end(), l3.begin(), l3.end());
    p1.push_back(ah(4));
    RawClass c1{{ah(1), ah(2), ah(5), ah(6)}, 2, 0};
    c1.members.insert(c1.members.end(), l1.begin(), l1.end());
    RawClass c2{{ah(2), ah(5), ah(6)}, 2, 0};
    c2.members.insert(c2.members.end(), l2.begin(), l2.end());
    b.institute(i1, 3, p1, {c1, c2}, tag);
    b.institute(i2, 3, {ah(6), ah(2), ah(1), ah(5), ah(4), ah(3)},
                {{{ah(1), ah(2), ah(5), ah(6)}, 2, 0}, {{ah(1), ah(4), ah(6)}, 2, 0}}, tag);
    ++b.out.clause_gadgets;
  }
  return b.out;
}

bool GadgetReport::binding_pass() const {
  for (const auto& c : checks)
    if (c.binding && c.status != CheckStatus::kPass) return false;
  return true;
}

GadgetReport verify_gadgets(const SatFormula* formula, long cap) {
  GadgetReport report;
  auto run = [&](const std::string& name, auto body, bool binding = true) {
    GadgetCheck check;
    check.name = name;
    check.binding = binding;
    try {
      body(check);
    } catch (const SizeCapExceeded& e) {
      check.status = CheckStatus::kSkipped;
      check.detail = std::string("size cap exceeded: ") + e.what();
    }
    report.checks.push_back(check);
  };

  run("T-bar alone has no stable matching", [&](GadgetCheck& c) {
    Instance t = validate(tbar_component(true));
    auto all = enumerate_stable(t, cap);
    c.status = all.empty() ? CheckStatus::kPass : CheckStatus::kFail;
    c.detail = std::to_string(all.size()) + " stable matchings";
  });
  run("T-bar without T1 admits the listed stable matching", [&](GadgetCheck& c) {
    Instance t = validate(tbar_component(false));
    bool stable = is_stable(t, tbar_feature_b(t), cap);
    auto all = enumerate_stable(t, cap);
    c.status = stable && !all.empty() ? CheckStatus::kPass : CheckStatus::kFail;
    c.detail = std::string("listed matching ") + (stable ? "stable" : "not stable") + ", " +
               std::to_string(all.size()) + " stable matchings";
  });
  run("literal-pair gadget has exactly three outcomes", [&](GadgetCheck& c) {
    Instance p = validate(pair_component());
    auto all = enumerate_stable(p, cap);
    c.status = all == pair_outcomes(p) ? CheckStatus::kPass : CheckStatus::kFail;
    c.detail = std::to_string(all.size()) + " stable matchings";
  });
  if (formula) {
    run("end-to-end correspondence (exploratory)", [&](GadgetCheck& c) {
      bool sat = one_in_three_satisfiable(*formula);
      Instance g = validate(sat_to_csm(*formula).raw);
      auto all = enumerate_stable(g, cap);
      c.status = sat == !all.empty() ? CheckStatus::kPass : CheckStatus::kFail;
      c.detail = std::string("formula ") + (sat ? "satisfiable" : "unsatisfiable") + ", " +
                 std::to_string(all.size()) + " stable matchings";
    }, false);
  }
  return report;
}

}  // namespace csm
