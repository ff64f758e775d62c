// Copyright 2026 The Decapode Authors. All Rights Reserved.
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

#include "decapode/decapode_json.hpp"

#include <nlohmann/json.hpp>

#include "decapode/error.hpp"

namespace decapode {

using nlohmann::ordered_json;

std::string decapode_to_json(const Decapode& d, const std::vector<std::string>& exposed, int indent) {
  ordered_json doc;
  doc["Var"] = ordered_json::array();
  for (const Var& v : d.vars()) {
    ordered_json row{{"name", v.name}, {"type", to_string(v.type)}};
    if (v.parameter) row["parameter"] = true;
    doc["Var"].push_back(std::move(row));
  }
  doc["TVar"] = ordered_json::array();
  for (const TVar& t : d.tvars()) doc["TVar"].push_back({{"incl", t.incl}});
  doc["Op1"] = ordered_json::array();
  for (const Op1& op : d.op1s()) doc["Op1"].push_back({{"src", op.src}, {"tgt", op.tgt}, {"op1", op.op1}});
  doc["Op2"] = ordered_json::array();
  for (const Op2& op : d.op2s()) {
    doc["Op2"].push_back({{"proj1", op.proj1}, {"proj2", op.proj2}, {"res", op.res}, {"op2", op.op2}});
  }
  doc["Σ"] = ordered_json::array();
  for (const Sigma& s : d.sigmas()) doc["Σ"].push_back({{"sum", s.sum}});
  doc["Summand"] = ordered_json::array();
  for (const Summand& s : d.summands()) doc["Summand"].push_back({{"summand", s.summand}, {"summation", s.summation}});
  if (!exposed.empty()) doc["exposed"] = exposed;
  return doc.dump(indent) + "\n";
}

namespace {

const ordered_json& table(const ordered_json& doc, const char* name) {
  static const ordered_json empty = ordered_json::array();
  if (!doc.contains(name)) return empty;
  const ordered_json& t = doc.at(name);
  if (!t.is_array()) throw Error(ErrorCode::MalformedInput, std::string("table ") + name + " is not an array");
  return t;
}

std::size_t ref(const ordered_json& row, const char* field, std::size_t bound, const char* table) {
  if (!row.contains(field) || !row.at(field).is_number_unsigned()) {
    throw Error(ErrorCode::MalformedInput, std::string(table) + " row needs unsigned field '" + field + "'");
  }
  const auto v = row.at(field).get<std::size_t>();
  if (v >= bound) {
    throw Error(ErrorCode::MalformedInput,
                std::string(table) + "." + field + " = " + std::to_string(v) + " is out of range");
  }
  return v;
}

}  // namespace

DecapodeDocument decapode_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "decapode document must be an object");
  DecapodeDocument out;
  Decapode& d = out.decapode;
  try {
    for (const auto& row : table(doc, "Var")) {
      auto type = parse_var_type(row.value("type", std::string("Infer")));
      if (!type) throw Error(ErrorCode::MalformedInput, "unknown type " + row.at("type").dump());
      d.add_var(row.at("name").get<std::string>(), *type, row.value("parameter", false));
    }
    const std::size_t nv = d.vars().size();
    for (const auto& row : table(doc, "TVar")) d.add_tvar(ref(row, "incl", nv, "TVar"));
    for (const auto& row : table(doc, "Op1")) {
      d.add_op1(ref(row, "src", nv, "Op1"), ref(row, "tgt", nv, "Op1"), row.at("op1").get<std::string>());
    }
    for (const auto& row : table(doc, "Op2")) {
      d.add_op2(ref(row, "proj1", nv, "Op2"), ref(row, "proj2", nv, "Op2"), ref(row, "res", nv, "Op2"),
                row.at("op2").get<std::string>());
    }
    const auto& sigmas = table(doc, "Σ");
    std::vector<std::vector<VarId>> args(sigmas.size());
    for (const auto& row : table(doc, "Summand")) {
      args[ref(row, "summation", sigmas.size(), "Summand")].push_back(ref(row, "summand", nv, "Summand"));
    }
    for (std::size_t s = 0; s < sigmas.size(); ++s) d.add_sum(ref(sigmas[s], "sum", nv, "Σ"), args[s]);
    if (doc.contains("exposed")) out.exposed = doc.at("exposed").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("bad decapode row: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::MalformedInput, e.what());
    throw;
  }
  for (const std::string& name : out.exposed) {
    if (!d.find_var(name)) throw Error(ErrorCode::MalformedInput, "exposed name '" + name + "' is not a variable");
  }
  return out;
}

}  // namespace decapode
