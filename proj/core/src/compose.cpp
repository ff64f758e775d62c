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

#include "decapode/compose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "decapode/decapode_json.hpp"
#include "decapode/error.hpp"
#include "decapode/parser.hpp"

namespace decapode {

std::size_t UwdPattern::add_box(std::string name, std::vector<std::string> ports) {
  boxes.push_back({std::move(name), std::move(ports)});
  return boxes.size() - 1;
}

std::size_t UwdPattern::add_junction(std::string name) {
  junctions.push_back(std::move(name));
  return junctions.size() - 1;
}

void UwdPattern::wire(std::size_t box, std::size_t port, std::size_t junction) {
  wires.push_back({box, port, junction});
}

std::size_t UwdPattern::degree(std::size_t junction) const {
  return static_cast<std::size_t>(
      std::count_if(wires.begin(), wires.end(), [&](const UwdWire& w) { return w.junction == junction; }));
}

void UwdPattern::check() const {
  std::set<std::string> names;
  for (const std::string& j : junctions) {
    if (!j.empty() && !names.insert(j).second) {
      throw Error(ErrorCode::InvalidPattern, "junction name '" + j + "' is repeated");
    }
  }
  std::vector<std::vector<std::size_t>> uses(boxes.size());
  for (std::size_t b = 0; b < boxes.size(); ++b) uses[b].assign(boxes[b].ports.size(), 0);
  for (const UwdWire& w : wires) {
    if (w.box >= boxes.size()) throw Error(ErrorCode::InvalidPattern, "wire to missing box " + std::to_string(w.box));
    if (w.port >= boxes[w.box].ports.size()) {
      throw Error(ErrorCode::InvalidPattern,
                  "wire to missing port " + std::to_string(w.port) + " of box '" + boxes[w.box].name + "'");
    }
    if (w.junction >= junctions.size()) {
      throw Error(ErrorCode::InvalidPattern, "wire to missing junction " + std::to_string(w.junction));
    }
    ++uses[w.box][w.port];
  }
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    for (std::size_t p = 0; p < uses[b].size(); ++p) {
      if (uses[b][p] != 1) {
        throw Error(ErrorCode::InvalidPattern, "port '" + boxes[b].ports[p] + "' of box '" + boxes[b].name +
                                                   "' is wired " + std::to_string(uses[b][p]) + " times");
      }
    }
  }
  for (std::size_t j : outer_ports) {
    if (j >= junctions.size()) throw Error(ErrorCode::InvalidPattern, "outer port on missing junction");
  }
}

void OpenDecapode::check() const {
  std::set<std::string> seen;
  for (const std::string& name : exposed) {
    if (!decapode.find_var(name)) throw Error(ErrorCode::InvalidArgument, "exposed '" + name + "' is not a variable");
    if (!seen.insert(name).second) throw Error(ErrorCode::InvalidArgument, "'" + name + "' exposed twice");
  }
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

std::string junction_label(const UwdPattern& p, std::size_t j) {
  return p.junctions[j].empty() ? "#" + std::to_string(j) : p.junctions[j];
}

struct Glued {
  Decapode decapode;
  std::vector<VarId> junction_var;
};

Glued glue(const UwdPattern& pattern, const std::vector<OpenDecapode>& components) {
  pattern.check();
  if (components.size() != pattern.boxes.size()) {
    throw Error(ErrorCode::InvalidPattern, "pattern has " + std::to_string(pattern.boxes.size()) + " boxes but " +
                                               std::to_string(components.size()) + " components were given");
  }
  std::vector<std::size_t> offset(components.size() + 1, 0);
  for (std::size_t b = 0; b < components.size(); ++b) {
    components[b].check();
    if (components[b].exposed.size() != pattern.boxes[b].ports.size()) {
      std::string wired;
      for (const UwdWire& w : pattern.wires) {
        if (w.box == b) wired += (wired.empty() ? "" : ", ") + junction_label(pattern, w.junction);
      }
      throw Error(ErrorCode::InvalidPattern, "box '" + pattern.boxes[b].name + "' has " +
                                                 std::to_string(pattern.boxes[b].ports.size()) +
                                                 " ports (junctions " + wired + ") but its component exposes " +
                                                 std::to_string(components[b].exposed.size()));
    }
    offset[b + 1] = offset[b] + components[b].decapode.vars().size();
  }
  const std::size_t total = offset.back();
  auto var_at = [&](std::size_t g) -> const Var& {
    const std::size_t b = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), g) - offset.begin()) - 1;
    return components[b].decapode.var(g - offset[b]);
  };

  UnionFind uf(total);
  std::vector<std::optional<std::size_t>> junction_of(total);
  std::vector<std::optional<std::size_t>> first_member(pattern.junctions.size());
  for (const UwdWire& w : pattern.wires) {
    const OpenDecapode& c = components[w.box];
    const std::size_t g = offset[w.box] + c.decapode.var_id(c.exposed[w.port]);
    junction_of[g] = w.junction;
    if (first_member[w.junction]) {
      uf.unite(*first_member[w.junction], g);
    } else {
      first_member[w.junction] = g;
    }
  }

  // Per class: name, unified type, parameter flag.
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t g = 0; g < total; ++g) classes[uf.find(g)].push_back(g);

  Glued out;
  Decapode& d = out.decapode;
  std::vector<VarId> global_to_new(total);
  std::vector<bool> class_has_junction(total, false);
  std::size_t anonymous = 0;
  for (const auto& [root, members] : classes) {
    std::optional<std::size_t> junction;
    for (std::size_t g : members)
      if (junction_of[g]) junction = junction_of[g];
    VarType type = VarType::infer();
    bool parameter = false;
    for (std::size_t g : members) {
      const Var& v = var_at(g);
      parameter = parameter || v.parameter;
      if (v.type.is_infer()) continue;
      if (!type.is_infer() && type != v.type) {
        throw Error(ErrorCode::TypeError, "junction " + junction_label(pattern, junction.value_or(0)) + " joins " +
                                              to_string(type) + " and " + to_string(v.type));
      }
      type = v.type;
    }
    std::string name;
    if (junction) {
      name = pattern.junctions[*junction];
      if (name.empty()) {
        std::vector<std::string> exposed_names;
        for (std::size_t g : members) exposed_names.push_back(var_at(g).name);
        name = *std::min_element(exposed_names.begin(), exposed_names.end());
        // Two unnamed junctions can inherit the same port name.
        if (d.find_var(name)) name = "junction" + std::to_string(*junction);
      }
    } else {
      const std::size_t b =
          static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), root) - offset.begin()) - 1;
      const Var& v = var_at(root);
      name = v.name.starts_with(kAnonymousPrefix) ? std::string(kAnonymousPrefix) + std::to_string(++anonymous)
                                                  : pattern.boxes[b].name + "." + v.name;
    }
    if (d.find_var(name)) {
      throw Error(ErrorCode::InvalidPattern, "composite variable name '" + name + "' is produced twice");
    }
    const VarId id = d.add_var(name, type, parameter);
    for (std::size_t g : members) global_to_new[g] = id;
    if (junction) class_has_junction[id] = true;
  }

  out.junction_var.resize(pattern.junctions.size());
  for (std::size_t j = 0; j < pattern.junctions.size(); ++j) {
    if (first_member[j]) {
      out.junction_var[j] = global_to_new[*first_member[j]];
    } else {
      const std::string name = pattern.junctions[j].empty() ? "junction" + std::to_string(j) : pattern.junctions[j];
      if (d.find_var(name)) throw Error(ErrorCode::InvalidPattern, "composite variable name '" + name + "' is produced twice");
      out.junction_var[j] = d.add_var(name);
    }
  }

  std::set<VarId> tvars;
  for (std::size_t b = 0; b < components.size(); ++b) {
    const Decapode& c = components[b].decapode;
    auto map = [&](VarId v) { return global_to_new[offset[b] + v]; };
    // Ops named after a parameter follow the parameter's new name.
    auto op_name = [&](const std::string& op) {
      if (auto p = c.find_var(op); p && c.var(*p).parameter) return d.var(map(*p)).name;
      return op;
    };
    for (const TVar& t : c.tvars())
      if (tvars.insert(map(t.incl)).second) d.add_tvar(map(t.incl));
    for (const Op1& op : c.op1s()) d.add_op1(map(op.src), map(op.tgt), op_name(op.op1));
    for (const Op2& op : c.op2s()) d.add_op2(map(op.proj1), map(op.proj2), map(op.res), op_name(op.op2));
    for (std::size_t s = 0; s < c.sigmas().size(); ++s) {
      std::vector<VarId> args;
      for (VarId v : c.summands_of(s)) args.push_back(map(v));
      d.add_sum(map(c.sigmas()[s].sum), args);
    }
  }

  for (const Op1& op : std::vector<Op1>(d.op1s())) {
    if (op.op1 != kTimeDerivative || class_has_junction[op.tgt] || d.is_anonymous(op.tgt)) continue;
    if (d.tangents_of(op.src).size() != 1) continue;
    const std::string name = tangent_name(d.var(op.src).name);
    if (!d.find_var(name)) d.rename_var(op.tgt, name);
  }
  return out;
}

}  // namespace

Decapode oapply(const UwdPattern& pattern, const std::vector<OpenDecapode>& components) {
  return glue(pattern, components).decapode;
}

OpenDecapode oapply_open(const UwdPattern& pattern, const std::vector<OpenDecapode>& components) {
  Glued g = glue(pattern, components);
  OpenDecapode out{std::move(g.decapode), {}};
  for (std::size_t j : pattern.outer_ports) out.exposed.push_back(out.decapode.var(g.junction_var[j]).name);
  return out;
}

UwdPattern identity_pattern(const OpenDecapode& component, const std::string& box_name) {
  UwdPattern p;
  p.add_box(box_name, component.exposed);
  for (std::size_t i = 0; i < component.exposed.size(); ++i) {
    p.wire(0, i, p.add_junction(component.exposed[i]));
    p.outer_ports.push_back(i);
  }
  return p;
}

using nlohmann::ordered_json;

std::string uwd_to_json(const UwdPattern& pattern, int indent) {
  ordered_json doc;
  doc["boxes"] = ordered_json::array();
  for (const UwdBox& b : pattern.boxes) doc["boxes"].push_back({{"name", b.name}, {"ports", b.ports}});
  doc["junctions"] = pattern.junctions;
  doc["wires"] = ordered_json::array();
  for (const UwdWire& w : pattern.wires) {
    doc["wires"].push_back({{"box", w.box}, {"port", w.port}, {"junction", w.junction}});
  }
  doc["outer_ports"] = pattern.outer_ports;
  return doc.dump(indent) + "\n";
}

namespace {

std::size_t resolve(const ordered_json& value, const std::vector<std::string>& names, const std::string& what) {
  if (value.is_number_unsigned()) return value.get<std::size_t>();
  if (value.is_string()) {
    const auto name = value.get<std::string>();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::InvalidPattern, "unknown " + what + " '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
  }
  throw Error(ErrorCode::MalformedInput, what + " must be an index or a name");
}

}  // namespace

UwdPattern uwd_from_json(std::string_view text) {
  UwdPattern p;
  try {
    const ordered_json doc = ordered_json::parse(text);
    for (const auto& b : doc.at("boxes")) {
      p.add_box(b.at("name").get<std::string>(), b.value("ports", std::vector<std::string>{}));
    }
    for (const auto& j : doc.value("junctions", ordered_json::array())) {
      p.add_junction(j.is_null() ? std::string() : j.get<std::string>());
    }
    std::vector<std::string> box_names;
    for (const UwdBox& b : p.boxes) box_names.push_back(b.name);
    for (const auto& w : doc.value("wires", ordered_json::array())) {
      const std::size_t box = resolve(w.at("box"), box_names, "box");
      const std::vector<std::string> ports = box < p.boxes.size() ? p.boxes[box].ports : std::vector<std::string>{};
      p.wire(box, resolve(w.at("port"), ports, "port"), resolve(w.at("junction"), p.junctions, "junction"));
    }
    for (const auto& o : doc.value("outer_ports", ordered_json::array())) {
      p.outer_ports.push_back(resolve(o, p.junctions, "junction"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("bad wiring diagram: ") + e.what());
  }
  p.check();
  return p;
}

OpenDecapode load_component(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  OpenDecapode out;
  if (start != std::string_view::npos && text[start] == '{') {
    DecapodeDocument doc = decapode_from_json(text);
    out = {std::move(doc.decapode), std::move(doc.exposed)};
  } else {
    ParseResult parsed = parse_decapode_source(text);
    out = {std::move(parsed.decapode), std::move(parsed.exposed)};
  }
  out.check();
  return out;
}

}  // namespace decapode
