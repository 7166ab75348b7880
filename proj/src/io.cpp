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

#include "csm/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace csm {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, column = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError("syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(path + ": missing field '" + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw FormatError(path + ": expected a string");
  return v.get<std::string>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw FormatError(path + ": expected an integer");
  return v.get<int>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw FormatError(path + ": expected an array");
  return v;
}

std::vector<Id> id_list(const json& v, const std::string& path) {
  std::vector<Id> out;
  const json& arr = as_array(v, path);
  for (size_t k = 0; k < arr.size(); ++k)
    out.push_back(as_string(arr[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

RawInstance parse_instance(const std::string& text) {
  json doc = parse_json(text);
  RawInstance raw;
  const json& insts = as_array(field(doc, "institutes", "document"), "institutes");
  for (size_t k = 0; k < insts.size(); ++k) {
    const std::string path = "institutes[" + std::to_string(k) + "]";
    const json& obj = insts[k];
    RawInstitute ri;
    ri.id = as_string(field(obj, "id", path), path + ".id");
    ri.capacity = as_int(field(obj, "capacity", path), path + ".capacity");
    ri.preferences = id_list(field(obj, "preferences", path), path + ".preferences");
    if (obj.contains("classes")) {
      const json& classes = as_array(obj["classes"], path + ".classes");
      for (size_t c = 0; c < classes.size(); ++c) {
        const std::string cpath = path + ".classes[" + std::to_string(c) + "]";
        RawClass rc;
        rc.members = id_list(field(classes[c], "members", cpath), cpath + ".members");
        rc.upper = as_int(field(classes[c], "upper", cpath), cpath + ".upper");
        if (classes[c].contains("lower")) rc.lower = as_int(classes[c]["lower"], cpath + ".lower");
        ri.classes.push_back(std::move(rc));
      }
    }
    raw.institutes.push_back(std::move(ri));
  }
  const json& apps = as_array(field(doc, "applicants", "document"), "applicants");
  for (size_t k = 0; k < apps.size(); ++k) {
    const std::string path = "applicants[" + std::to_string(k) + "]";
    RawApplicant ra;
    ra.id = as_string(field(apps[k], "id", path), path + ".id");
    ra.preferences = id_list(field(apps[k], "preferences", path), path + ".preferences");
    raw.applicants.push_back(std::move(ra));
  }
  return raw;
}

std::string serialize_instance(const RawInstance& raw) {
  json doc;
  doc["institutes"] = json::array();
  for (const auto& ri : raw.institutes) {
    json obj;
    obj["id"] = ri.id;
    obj["capacity"] = ri.capacity;
    obj["preferences"] = ri.preferences;
    obj["classes"] = json::array();
    for (const auto& rc : ri.classes)
      obj["classes"].push_back({{"members", rc.members}, {"upper", rc.upper}, {"lower", rc.lower}});
    doc["institutes"].push_back(obj);
  }
  doc["applicants"] = json::array();
  for (const auto& ra : raw.applicants)
    doc["applicants"].push_back({{"id", ra.id}, {"preferences", ra.preferences}});
  return doc.dump(2) + "\n";
}

Instance load_instance(const std::string& path) { return validate(parse_instance(read_file(path))); }

FractionalMatching parse_point(const std::string& text, const Instance& instance) {
  json doc = parse_json(text);
  const json& arr = as_array(doc, "point");
  FractionalMatching x = zero_point(instance);
  std::set<int> seen;
  for (size_t k = 0; k < arr.size(); ++k) {
    const std::string path = "point[" + std::to_string(k) + "]";
    Id iid = as_string(field(arr[k], "institute", path), path + ".institute");
    Id aid = as_string(field(arr[k], "applicant", path), path + ".applicant");
    const json& v = field(arr[k], "value", path);
    auto i = instance.find_institute(iid);
    auto a = instance.find_applicant(aid);
    if (!i || !a || !instance.acceptable(*i, *a))
      throw FormatError(path + ": (" + iid + ", " + aid + ") is not an acceptable pair");
    int p = instance.pair_index(*i, *a);
    if (!seen.insert(p).second) throw FormatError(path + ": pair listed twice");
    if (v.is_number_integer()) {
      x[p] = Rational(v.get<long>());
    } else if (v.is_string()) {
      try {
        x[p] = parse_rational(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw FormatError(path + ".value: " + e.what());
      }
    } else {
      throw FormatError(path + ".value: expected \"p/q\", a decimal string or an integer");
    }
  }
  return x;
}

std::string serialize_point(const Instance& instance, const FractionalMatching& x) {
  json doc = json::array();
  for (int p = 0; p < instance.num_pairs(); ++p) {
    if (x[p] == 0) continue;
    const Pair& pr = instance.pairs()[p];
    doc.push_back({{"institute", instance.institute(pr.institute).id},
                   {"applicant", instance.applicant(pr.applicant).id},
                   {"value", to_string(x[p])}});
  }
  return doc.dump(2) + "\n";
}

Matching parse_matching(const std::string& text, const Instance& instance) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw FormatError("matching: expected an object");
  Matching m = empty_matching(instance);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto a = instance.find_applicant(it.key());
    if (!a) throw FormatError("matching: unknown applicant '" + it.key() + "'");
    Id iid = as_string(it.value(), "matching." + it.key());
    auto i = instance.find_institute(iid);
    if (!i) throw FormatError("matching." + it.key() + ": unknown institute '" + iid + "'");
    m[*a] = *i;
  }
  return m;
}

std::string serialize_matching(const Instance& instance, const Matching& matching) {
  json doc = json::object();
  for (int a = 0; a < static_cast<int>(matching.size()); ++a)
    if (matching[a] >= 0) doc[instance.applicant(a).id] = instance.institute(matching[a]).id;
  return doc.dump(2) + "\n";
}

ManyToManyInstance parse_m2m(const std::string& text) {
  json doc = parse_json(text);
  ManyToManyInstance m2m;
  auto side = [&](const char* key, std::vector<M2MEntity>& out) {
    const json& arr = as_array(field(doc, key, "document"), key);
    for (size_t k = 0; k < arr.size(); ++k) {
      const std::string path = std::string(key) + "[" + std::to_string(k) + "]";
      M2MEntity e;
      e.id = as_string(field(arr[k], "id", path), path + ".id");
      e.quota = as_int(field(arr[k], "quota", path), path + ".quota");
      e.preferences = id_list(field(arr[k], "preferences", path), path + ".preferences");
      out.push_back(std::move(e));
    }
  };
  side("institutes", m2m.institutes);
  side("applicants", m2m.applicants);
  return m2m;
}

}  // namespace csm
