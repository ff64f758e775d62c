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

#include "decapode/schedule.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "decapode/error.hpp"
#include "decapode/validate.hpp"

namespace decapode {

std::string to_string(CallKind kind) {
  switch (kind) {
    case CallKind::Unary: return "unary";
    case CallKind::Binary: return "binary";
    case CallKind::Varargs: return "varargs";
    case CallKind::Mask: return "mask";
  }
  return "unary";
}

SweepResult sweep(const Decapode& d, const std::vector<std::string>& state_vars) {
  std::vector<bool> visited(d.vars().size(), false);
  for (const std::string& name : state_vars) visited[d.var_id(name)] = true;
  for (VarId v = 0; v < d.vars().size(); ++v) {
    if (d.var(v).parameter || d.var(v).type.is_literal()) visited[v] = true;
  }
  std::vector<bool> consumed1(d.op1s().size(), false);
  std::vector<bool> consumed2(d.op2s().size(), false);
  std::vector<bool> consumed_sum(d.sigmas().size(), false);
  std::vector<std::vector<VarId>> summands(d.sigmas().size());
  for (std::size_t s = 0; s < d.sigmas().size(); ++s) summands[s] = d.summands_of(s);

  std::size_t remaining = 0;
  for (std::size_t r = 0; r < d.op1s().size(); ++r) {
    if (d.op1s()[r].op1 == kTimeDerivative) {
      consumed1[r] = true;
    } else {
      ++remaining;
    }
  }
  remaining += d.op2s().size() + d.sigmas().size();

  const auto name = [&](VarId v) { return d.var(v).name; };
  SweepResult out;
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    ++out.sweeps;
    for (std::size_t r = 0; r < d.op1s().size(); ++r) {
      const Op1& op = d.op1s()[r];
      if (consumed1[r] || !visited[op.src]) continue;
      out.calls.push_back({CallKind::Unary, op.op1, {name(op.src)}, name(op.tgt), 0});
      visited[op.tgt] = true;
      consumed1[r] = true;
      --remaining;
      progress = true;
    }
    for (std::size_t r = 0; r < d.op2s().size(); ++r) {
      const Op2& op = d.op2s()[r];
      if (consumed2[r] || !visited[op.proj1] || !visited[op.proj2]) continue;
      out.calls.push_back({CallKind::Binary, op.op2, {name(op.proj1), name(op.proj2)}, name(op.res), 0});
      visited[op.res] = true;
      consumed2[r] = true;
      --remaining;
      progress = true;
    }
    for (std::size_t s = 0; s < d.sigmas().size(); ++s) {
      if (consumed_sum[s]) continue;
      if (!std::all_of(summands[s].begin(), summands[s].end(), [&](VarId v) { return visited[v]; })) continue;
      Call call{CallKind::Varargs, std::string(kSumOperator), {}, name(d.sigmas()[s].sum), 0};
      for (VarId v : summands[s]) call.inputs.push_back(name(v));
      out.calls.push_back(std::move(call));
      visited[d.sigmas()[s].sum] = true;
      consumed_sum[s] = true;
      --remaining;
      progress = true;
    }
  }
  for (std::size_t r = 0; r < d.op1s().size(); ++r) {
    const Op1& op = d.op1s()[r];
    if (!consumed1[r]) out.unconsumed.push_back("Op1 row " + std::to_string(r) + ": " + name(op.tgt) + " = " + op.op1 + "(" + name(op.src) + ")");
  }
  for (std::size_t r = 0; r < d.op2s().size(); ++r) {
    const Op2& op = d.op2s()[r];
    if (!consumed2[r]) {
      out.unconsumed.push_back("Op2 row " + std::to_string(r) + ": " + name(op.res) + " = " + op.op2 + "(" +
                               name(op.proj1) + ", " + name(op.proj2) + ")");
    }
  }
  for (std::size_t s = 0; s < d.sigmas().size(); ++s) {
    if (!consumed_sum[s]) out.unconsumed.push_back("Σ row " + std::to_string(s) + ": " + name(d.sigmas()[s].sum));
  }
  return out;
}

Schedule schedule(const Decapode& d, const std::vector<std::string>& state_vars) {
  const ValidationReport report = validate(d, state_vars);
  if (!report.empty()) throw Error(ErrorCode::NotCompilable, "\n" + report.to_string());
  SweepResult result = sweep(d, state_vars);
  if (!result.complete()) {
    std::string stuck;
    for (const std::string& row : result.unconsumed) stuck += "\n  " + row;
    throw Error(ErrorCode::CyclicDependency, "rows never became ready:" + stuck);
  }
  Schedule s;
  s.calls = std::move(result.calls);
  s.state_vars = state_vars;
  for (const std::string& state : state_vars) {
    const VarId v = d.var_id(state);
    s.tangent_vars.emplace_back(d.var(d.tangents_of(v).front()).name, state);
  }
  s.source = d;
  return s;
}

Schedule attach_masks(const Schedule& s, const std::vector<BoundaryMask>& masks, const SimplicialMesh2D* mesh) {
  Schedule out = s;
  for (const BoundaryMask& given : masks) {
    const auto id = s.source.find_var(given.target);
    if (!id) throw Error(ErrorCode::InvalidArgument, "mask target '" + given.target + "' is not a variable");
    BoundaryMask m = given;
    m.target = s.source.var(*id).name;
    if (m.mode == MaskMode::SetValue && m.values.size() != m.indices.size()) {
      throw Error(ErrorCode::InvalidArgument, "mask on '" + m.target + "' has " + std::to_string(m.indices.size()) +
                                                  " indices but " + std::to_string(m.values.size()) + " values");
    }
    const VarType type = s.source.var(*id).type;
    if (mesh != nullptr && type.is_form()) {
      const std::size_t n = mesh->form_size(type.form);
      for (std::size_t i : m.indices) {
        if (i >= n) {
          throw Error(ErrorCode::InvalidArgument, "mask index " + std::to_string(i) + " is outside " + to_string(type) +
                                                      " '" + m.target + "' of length " + std::to_string(n));
        }
      }
    }
    out.masks.push_back(m);
    Call call{CallKind::Mask, "mask", {m.target}, m.target, out.masks.size() - 1};

    const bool is_state = std::find(s.state_vars.begin(), s.state_vars.end(), m.target) != s.state_vars.end();
    const bool is_tangent = std::any_of(s.tangent_vars.begin(), s.tangent_vars.end(),
                                        [&](const auto& tv) { return tv.first == m.target; });
    std::size_t pos;
    if (is_state || s.source.var(*id).parameter) {
      pos = 0;
      while (pos < out.calls.size() && out.calls[pos].kind == CallKind::Mask) ++pos;
    } else if (is_tangent) {
      pos = out.calls.size();
    } else {
      auto def = std::find_if(out.calls.begin(), out.calls.end(),
                              [&](const Call& c) { return c.kind != CallKind::Mask && c.output == m.target; });
      if (def == out.calls.end()) {
        throw Error(ErrorCode::InvalidArgument, "mask target '" + m.target + "' is not computed by the schedule");
      }
      pos = static_cast<std::size_t>(def - out.calls.begin()) + 1;
      while (pos < out.calls.size() && out.calls[pos].kind == CallKind::Mask && out.calls[pos].output == m.target) ++pos;
    }
    out.calls.insert(out.calls.begin() + static_cast<std::ptrdiff_t>(pos), std::move(call));
  }
  return out;
}

std::vector<std::size_t> boundary_indices(const SimplicialMesh2D& mesh, FormType type) {
  std::vector<std::size_t> out;
  switch (type.simplex_dimension()) {
    case 0: return mesh.boundary_vertices();
    case 1:
      for (std::size_t e = 0; e < mesh.num_edges(); ++e)
        if (mesh.boundary_edge_flags()[e]) out.push_back(e);
      return out;
    default:
      for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& te = mesh.triangle_edges(t);
        if (std::any_of(te.begin(), te.end(), [&](std::size_t e) { return mesh.boundary_edge_flags()[e]; })) {
          out.push_back(t);
        }
      }
      return out;
  }
}

std::string schedule_to_json(const Schedule& s, int indent) {
  nlohmann::ordered_json calls = nlohmann::ordered_json::array();
  for (const Call& c : s.calls) {
    nlohmann::ordered_json row{{"kind", to_string(c.kind)}, {"op", c.op}, {"inputs", c.inputs}, {"output", c.output}};
    if (c.kind == CallKind::Mask) {
      const BoundaryMask& m = s.masks.at(c.mask);
      row["mode"] = m.mode == MaskMode::SetZero ? "set_zero" : "set_value";
      row["count"] = m.indices.size();
    }
    calls.push_back(std::move(row));
  }
  return calls.dump(indent) + "\n";
}

std::string schedule_listing(const Schedule& s) {
  std::string out;
  const std::size_t width = std::to_string(s.calls.empty() ? 0 : s.calls.size() - 1).size();
  for (std::size_t i = 0; i < s.calls.size(); ++i) {
    const Call& c = s.calls[i];
    std::string index = std::to_string(i);
    index.insert(0, width - index.size(), ' ');
    out += "  " + index + ": ";
    if (c.kind == CallKind::Mask) {
      const BoundaryMask& m = s.masks.at(c.mask);
      out += "mask " + c.output + " (" + std::to_string(m.indices.size()) + " entries, " +
             (m.mode == MaskMode::SetZero ? "zero" : "value") + ")\n";
      continue;
    }
    out += c.output + " = " + c.op + "(";
    for (std::size_t k = 0; k < c.inputs.size(); ++k) out += (k ? ", " : "") + c.inputs[k];
    out += ")\n";
  }
  return out;
}

}  // namespace decapode
