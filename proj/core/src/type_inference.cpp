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

#include "decapode/type_inference.hpp"

#include <map>

#include "decapode/error.hpp"

namespace decapode {

namespace {

const std::string kSub[3] = {"₀", "₁", "₂"};

const std::map<std::string, std::string, std::less<>>& alias_table() {
  static const std::map<std::string, std::string, std::less<>> table = [] {
    std::map<std::string, std::string, std::less<>> t;
    for (int k = 0; k < 3; ++k) {
      const std::string n = std::to_string(k);
      t["star" + n] = "⋆" + kSub[k];
      t["⋆" + n] = "⋆" + kSub[k];
      t["inv_star" + n] = "⋆" + kSub[k] + "⁻¹";
      t["⋆" + n + "⁻¹"] = "⋆" + kSub[k] + "⁻¹";
    }
    for (int k = 0; k < 2; ++k) {
      const std::string n = std::to_string(k);
      t["d" + n] = "d" + kSub[k];
      t["dual_d" + n] = "d̃" + kSub[k];
      t["d̃" + n] = "d̃" + kSub[k];
      for (int l = 0; l < 2; ++l) {
        const std::string m = std::to_string(l);
        t["wedge" + n + m] = "∧" + kSub[k] + kSub[l];
        t["∧" + n + m] = "∧" + kSub[k] + kSub[l];
      }
    }
    t["dual_d"] = "d̃";
    t["star"] = "⋆";
    t["inv_star"] = "⋆⁻¹";
    t["wedge"] = "∧";
    t["lap0"] = "Δ₀";
    t["Δ0"] = "Δ₀";
    t["L0"] = "Δ₀";
    t["dt"] = std::string(kTimeDerivative);
    t["∂t"] = std::string(kTimeDerivative);
    t["∂_t"] = std::string(kTimeDerivative);
    t["mult"] = "*";
    t["grad"] = "∇";
    t["div"] = "∇·";
    return t;
  }();
  return table;
}

const std::map<std::string, OperatorSignature, std::less<>>& signature_table() {
  static const std::map<std::string, OperatorSignature, std::less<>> table = [] {
    std::map<std::string, OperatorSignature, std::less<>> t;
    const auto P = FormType::primal;
    const auto D = FormType::dual;
    t["d₀"] = {{P(0)}, P(1)};
    t["d₁"] = {{P(1)}, P(2)};
    t["d̃₀"] = {{D(0)}, D(1)};
    t["d̃₁"] = {{D(1)}, D(2)};
    for (int k = 0; k < 3; ++k) {
      t["⋆" + kSub[k]] = {{P(k)}, D(2 - k)};
      t["⋆" + kSub[k] + "⁻¹"] = {{D(2 - k)}, P(k)};
    }
    t["Δ₀"] = {{P(0)}, P(0)};
    t["∇"] = {{P(0)}, D(1)};
    t["∇·"] = {{D(1)}, P(0)};
    t["∧₀₀"] = {{P(0), P(0)}, P(0)};
    t["∧₀₁"] = {{P(0), P(1)}, P(1)};
    t["∧₁₀"] = {{P(1), P(0)}, P(1)};
    t["∧₁₁"] = {{P(1), P(1)}, P(2)};
    return t;
  }();
  return table;
}

bool is_form(const Decapode& d, VarId v) { return d.var(v).type.is_form(); }
FormType form(const Decapode& d, VarId v) { return d.var(v).type.form; }

class Inference {
 public:
  explicit Inference(Decapode& d) : d_(d) {}

  void run() {
    do {
      changed_ = false;
      for (std::size_t r = 0; r < d_.op1s().size(); ++r) unary(r);
      for (std::size_t r = 0; r < d_.op2s().size(); ++r) binary(r);
      for (std::size_t s = 0; s < d_.sigmas().size(); ++s) sum(s);
    } while (changed_);
  }

 private:
  void assign(VarId v, FormType t, const std::string& context) {
    const Var& var = d_.var(v);
    if (var.type.is_form()) {
      if (var.type.form != t) {
        throw Error(ErrorCode::TypeError, "variable '" + var.name + "' is " + to_string(var.type) + " but " +
                                              context + " requires " + to_string(t));
      }
      return;
    }
    if (var.type.is_literal()) {
      throw Error(ErrorCode::TypeError,
                  "variable '" + var.name + "' is Literal but " + context + " requires " + to_string(t));
    }
    d_.set_type(v, VarType::of(t));
    changed_ = true;
  }

  void unary(std::size_t row) {
    const Op1 op = d_.op1s()[row];
    const std::string context = "operator " + op.op1;
    if (auto sig = builtin_signature(op.op1)) {
      assign(op.src, sig->inputs[0], context);
      assign(op.tgt, sig->output, context);
      return;
    }
    if (op.op1 == "d" || op.op1 == "d̃") {
      const bool dual = op.op1 == "d̃";
      const auto P = dual ? Primality::Dual : Primality::Primal;
      if (is_form(d_, op.src) && form(d_, op.src).primality == P && form(d_, op.src).degree < 2) {
        resolve1(row, (dual ? "d̃" : "d") + kSub[form(d_, op.src).degree]);
      } else if (is_form(d_, op.tgt) && form(d_, op.tgt).primality == P && form(d_, op.tgt).degree > 0) {
        resolve1(row, (dual ? "d̃" : "d") + kSub[form(d_, op.tgt).degree - 1]);
      } else if (is_form(d_, op.src)) {
        throw Error(ErrorCode::TypeError, op.op1 + " cannot apply to " + to_string(d_.var(op.src).type) +
                                              " variable '" + d_.var(op.src).name + "'");
      }
      return;
    }
    if (op.op1 == "⋆") {
      if (is_form(d_, op.src) && form(d_, op.src).is_primal()) {
        resolve1(row, "⋆" + kSub[form(d_, op.src).degree]);
      } else if (is_form(d_, op.tgt) && form(d_, op.tgt).is_dual()) {
        resolve1(row, "⋆" + kSub[2 - form(d_, op.tgt).degree]);
      }
      return;
    }
    if (op.op1 == "⋆⁻¹") {
      if (is_form(d_, op.src) && form(d_, op.src).is_dual()) {
        resolve1(row, "⋆" + kSub[2 - form(d_, op.src).degree] + "⁻¹");
      } else if (is_form(d_, op.tgt) && form(d_, op.tgt).is_primal()) {
        resolve1(row, "⋆" + kSub[form(d_, op.tgt).degree] + "⁻¹");
      }
      return;
    }
    if (is_type_preserving_unary(d_, op.op1)) {
      if (is_form(d_, op.src)) assign(op.tgt, form(d_, op.src), context);
      if (is_form(d_, op.tgt)) assign(op.src, form(d_, op.tgt), context);
    }
  }

  void binary(std::size_t row) {
    const Op2 op = d_.op2s()[row];
    const std::string context = "operator " + op.op2;
    if (auto sig = builtin_signature(op.op2)) {
      assign(op.proj1, sig->inputs[0], context);
      assign(op.proj2, sig->inputs[1], context);
      assign(op.res, sig->output, context);
      return;
    }
    if (op.op2 == "∧") {
      if (is_form(d_, op.proj1) && is_form(d_, op.proj2)) {
        const FormType a = form(d_, op.proj1), b = form(d_, op.proj2);
        if (a.is_primal() && b.is_primal() && a.degree + b.degree <= 2 && a.degree < 2 && b.degree < 2) {
          d_.rename_op2(row, "∧" + kSub[a.degree] + kSub[b.degree]);
          changed_ = true;
        } else {
          throw Error(ErrorCode::TypeError, "no wedge product for " + to_string(a) + " and " + to_string(b));
        }
      }
      return;
    }
    if (op.op2 == "*" || op.op2 == "+" || op.op2 == "-") {
      const VarType a = d_.var(op.proj1).type, b = d_.var(op.proj2).type;
      if (a.is_form() && b.is_form() && a.form != b.form) {
        throw Error(ErrorCode::TypeError, context + " mixes " + to_string(a) + " and " + to_string(b));
      }
      if (a.is_form()) assign(op.res, a.form, context);
      if (b.is_form()) assign(op.res, b.form, context);
      if (is_form(d_, op.res) && a.is_infer() && b.is_literal()) assign(op.proj1, form(d_, op.res), context);
      if (is_form(d_, op.res) && b.is_infer() && a.is_literal()) assign(op.proj2, form(d_, op.res), context);
    }
  }

  void sum(std::size_t s) {
    std::vector<VarId> members = d_.summands_of(s);
    members.push_back(d_.sigmas()[s].sum);
    for (VarId v : members) {
      if (!is_form(d_, v)) continue;
      for (VarId w : members) assign(w, form(d_, v), "sum into '" + d_.var(d_.sigmas()[s].sum).name + "'");
      return;
    }
  }

  void resolve1(std::size_t row, const std::string& name) {
    d_.rename_op1(row, name);
    changed_ = true;
  }

  Decapode& d_;
  bool changed_ = false;
};

}  // namespace

std::string canonical_operator_name(std::string_view name) {
  const auto& table = alias_table();
  if (auto it = table.find(name); it != table.end()) return it->second;
  return std::string(name);
}

std::optional<OperatorSignature> builtin_signature(std::string_view canonical) {
  const auto& table = signature_table();
  if (auto it = table.find(canonical); it != table.end()) return it->second;
  return std::nullopt;
}

bool is_type_preserving_unary(const Decapode& d, std::string_view op) {
  if (op == kTimeDerivative || op == "neg") return true;
  if (auto p = d.find_var(op)) return d.var(*p).parameter;
  return false;
}

void infer_types(Decapode& d) { Inference(d).run(); }

}  // namespace decapode
