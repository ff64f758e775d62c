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

#include "decapode/dot.hpp"

namespace decapode {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string var_node(VarId v) { return "v" + std::to_string(v); }

}  // namespace

std::string to_dot(const Decapode& d, const std::string& graph_name) {
  std::string out = "digraph " + quote(graph_name) + " {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (VarId v = 0; v < d.vars().size(); ++v) {
    const Var& var = d.var(v);
    std::string label = d.is_anonymous(v) ? std::string(kAnonymousPrefix) : var.name;
    if (!var.type.is_infer()) label += " : " + to_string(var.type);
    out += "  " + var_node(v) + " [label=" + quote(label);
    if (var.parameter) out += ", shape=diamond";
    out += "];\n";
  }
  for (const Op1& op : d.op1s()) {
    out += "  " + var_node(op.src) + " -> " + var_node(op.tgt);
    out += op.op1 == kTimeDerivative ? " [style=dashed];\n" : " [label=" + quote(op.op1) + "];\n";
  }
  for (std::size_t i = 0; i < d.op2s().size(); ++i) {
    const Op2& op = d.op2s()[i];
    const std::string node = "op2_" + std::to_string(i);
    out += "  " + node + " [shape=box, label=" + quote(op.op2) + "];\n";
    out += "  " + var_node(op.proj1) + " -> " + node + ";\n";
    out += "  " + var_node(op.proj2) + " -> " + node + ";\n";
    out += "  " + node + " -> " + var_node(op.res) + ";\n";
  }
  for (std::size_t s = 0; s < d.sigmas().size(); ++s) {
    const std::string node = "sum_" + std::to_string(s);
    out += "  " + node + " [shape=circle, label=\"Σ\"];\n";
    for (VarId v : d.summands_of(s)) out += "  " + var_node(v) + " -> " + node + ";\n";
    out += "  " + node + " -> " + var_node(d.sigmas()[s].sum) + ";\n";
  }
  return out + "}\n";
}

}  // namespace decapode
