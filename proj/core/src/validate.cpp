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

#include "decapode/validate.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "decapode/error.hpp"

namespace decapode {

bool ValidationReport::has(int rule, const std::string& element) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule && v.element == element; });
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const Violation& v : violations) out += "rule " + std::to_string(v.rule) + ": " + v.message + "\n";
  return out;
}

std::vector<std::size_t> definition_counts(const Decapode& d) {
  std::vector<std::size_t> count(d.vars().size(), 0);
  for (const Op1& op : d.op1s())
    if (op.op1 != kTimeDerivative) ++count[op.tgt];
  for (const Op2& op : d.op2s()) ++count[op.res];
  for (const Sigma& s : d.sigmas()) ++count[s.sum];
  return count;
}

namespace {

// Var nodes are [0, V); op nodes follow. ∂ₜ rows contribute no edges.
std::vector<std::vector<std::size_t>> dependency_graph(const Decapode& d) {
  const std::size_t nv = d.vars().size();
  std::vector<std::vector<std::size_t>> adj(nv);
  auto add_op = [&](const std::vector<VarId>& inputs, VarId output) {
    const std::size_t node = adj.size();
    adj.emplace_back(std::vector<std::size_t>{output});
    for (VarId in : inputs) adj[in].push_back(node);
  };
  for (const Op1& op : d.op1s())
    if (op.op1 != kTimeDerivative) add_op({op.src}, op.tgt);
  for (const Op2& op : d.op2s()) add_op({op.proj1, op.proj2}, op.res);
  for (std::size_t s = 0; s < d.sigmas().size(); ++s) add_op(d.summands_of(s), d.sigmas()[s].sum);
  return adj;
}

// Tarjan's algorithm; returns the components that contain a cycle.
std::vector<std::vector<std::size_t>> cyclic_components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0;
  std::vector<std::vector<std::size_t>> out;
  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] == kUnset) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::size_t> comp;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      comp.push_back(w);
    } while (w != v);
    const bool self_loop = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
    if (comp.size() > 1 || self_loop) out.push_back(std::move(comp));
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == kUnset) strong(v);
  return out;
}

}  // namespace

ValidationReport validate(const Decapode& d, const std::vector<std::string>& state_vars) {
  std::set<VarId> states;
  for (const std::string& name : state_vars) states.insert(d.var_id(name));
  ValidationReport report;
  const std::size_t nv = d.vars().size();

  auto cycles = cyclic_components(dependency_graph(d));
  std::vector<std::vector<VarId>> cycle_vars;
  for (auto& comp : cycles) {
    std::vector<VarId> vs;
    for (std::size_t node : comp)
      if (node < nv) vs.push_back(node);
    std::sort(vs.begin(), vs.end());
    cycle_vars.push_back(std::move(vs));
  }
  std::sort(cycle_vars.begin(), cycle_vars.end());
  for (const auto& vs : cycle_vars) {
    std::string names;
    for (VarId v : vs) names += (names.empty() ? "" : ", ") + d.var(v).name;
    report.violations.push_back({1, d.var(vs.front()).name, "cycle through " + names});
  }

  for (VarId s : states) {
    const std::size_t n = d.tangents_of(s).size();
    if (n != 1) {
      report.violations.push_back(
          {2, d.var(s).name, d.var(s).name + " has " + std::to_string(n) + " time derivatives, expected 1"});
    }
  }

  const auto defs = definition_counts(d);
  for (VarId v = 0; v < nv; ++v) {
    const Var& var = d.var(v);
    const bool input = states.contains(v) || var.parameter || var.type.is_literal();
    if (!input && defs[v] == 0) {
      report.violations.push_back({3, var.name, var.name + " has no defining operator"});
    }
  }
  for (VarId v = 0; v < nv; ++v) {
    const Var& var = d.var(v);
    if (defs[v] >= 2) {
      report.violations.push_back(
          {4, var.name, var.name + " has " + std::to_string(defs[v]) + " defining operators"});
    } else if (defs[v] == 1 && (states.contains(v) || var.parameter)) {
      report.violations.push_back({4, var.name,
                                   var.name + (var.parameter ? " is a parameter" : " is a state variable") +
                                       " but is also computed by an operator"});
    }
  }
  return report;
}

}  // namespace decapode
