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

#include "decapode/program.hpp"

#include <cmath>

#include "decapode/error.hpp"
#include "decapode/type_inference.hpp"

namespace decapode {

void OperatorRegistry::add_unary(std::string name, UnaryKernel kernel) { unary_[std::move(name)] = std::move(kernel); }

void OperatorRegistry::add_linear(std::string name, std::shared_ptr<const OperatorMatrix> matrix) {
  UnaryKernel k{matrix->domain(), matrix->codomain(), {}, [matrix] { return matrix; }};
  unary_[std::move(name)] = std::move(k);
}

void OperatorRegistry::add_linear(std::string name, FormType domain, FormType codomain,
                                  std::function<std::shared_ptr<const OperatorMatrix>()> factory) {
  unary_[std::move(name)] = UnaryKernel{domain, codomain, {}, std::move(factory)};
}

void OperatorRegistry::add_pointwise(std::string name, std::function<double(double)> f) {
  UnaryKernel k;
  k.fn = [f = std::move(f)](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = in.unaryExpr(f); };
  unary_[std::move(name)] = std::move(k);
}

void OperatorRegistry::add_binary(std::string name, BinaryKernel kernel) { binary_[std::move(name)] = std::move(kernel); }

void OperatorRegistry::add_varargs(std::string name, VarargsKernel kernel) {
  varargs_[std::move(name)] = std::move(kernel);
}

const UnaryKernel* OperatorRegistry::unary(const std::string& name) const {
  auto it = unary_.find(name);
  return it == unary_.end() ? nullptr : &it->second;
}

const BinaryKernel* OperatorRegistry::binary(const std::string& name) const {
  auto it = binary_.find(name);
  return it == binary_.end() ? nullptr : &it->second;
}

const VarargsKernel* OperatorRegistry::varargs(const std::string& name) const {
  auto it = varargs_.find(name);
  return it == varargs_.end() ? nullptr : &it->second;
}

OperatorRegistry standard_registry(std::shared_ptr<const OperatorCache> cache, HodgeVariant variant) {
  OperatorRegistry r;
  const std::string sub[3] = {"₀", "₁", "₂"};
  auto linear = [&](const std::string& name, std::function<std::shared_ptr<const OperatorMatrix>()> factory) {
    const OperatorSignature sig = *builtin_signature(name);
    r.add_linear(name, sig.inputs[0], sig.output, std::move(factory));
  };
  for (int k = 0; k < 2; ++k) {
    linear("d" + sub[k], [cache, k] { return cache->get(OperatorKind::ExteriorDerivative, k); });
    linear("d̃" + sub[k], [cache, k] { return cache->get(OperatorKind::DualDerivative, k); });
  }
  for (int k = 0; k < 3; ++k) {
    linear("⋆" + sub[k], [cache, k, variant] { return cache->get(OperatorKind::HodgeStar, k, variant); });
    linear("⋆" + sub[k] + "⁻¹",
           [cache, k, variant] { return cache->get(OperatorKind::InverseHodgeStar, k, variant); });
  }
  linear("Δ₀", [cache, variant] { return cache->get(OperatorKind::Laplacian0, 0, variant); });
  linear("∇", [cache, variant] {
    return std::make_shared<const OperatorMatrix>(compose(*cache->get(OperatorKind::HodgeStar, 1, variant),
                                                          *cache->get(OperatorKind::ExteriorDerivative, 0)));
  });
  linear("∇·", [cache, variant] {
    return std::make_shared<const OperatorMatrix>(compose(*cache->get(OperatorKind::InverseHodgeStar, 0, variant),
                                                          *cache->get(OperatorKind::DualDerivative, 1)));
  });

  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      BinaryKernel w{FormType::primal(k), FormType::primal(l), FormType::primal(k + l),
                     [cache, k, l](const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& out) {
                       wedge_into(cache->mesh(), cache->dual(), k, l, a, b, out);
                     }};
      r.add_binary("∧" + sub[k] + sub[l], std::move(w));
    }
  }
  r.add_binary("*", BinaryKernel{{}, {}, {}, [](const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& out) {
                                   if (a.size() == 1) {
                                     out = a[0] * b;
                                   } else if (b.size() == 1) {
                                     out = b[0] * a;
                                   } else {
                                     out = a.cwiseProduct(b);
                                   }
                                 }});
  r.add_varargs(std::string(kSumOperator),
                VarargsKernel{[](std::span<const Eigen::VectorXd* const> in, Eigen::VectorXd& out) {
                  out.setZero();
                  for (const Eigen::VectorXd* v : in) {
                    if (v->size() == 1 && out.size() != 1) {
                      out.array() += (*v)[0];
                    } else {
                      out += *v;
                    }
                  }
                }});
  r.add_pointwise("neg", [](double x) { return -x; });
  r.add_pointwise("exp", [](double x) { return std::exp(x); });
  r.add_pointwise("sin", [](double x) { return std::sin(x); });
  r.add_pointwise("cos", [](double x) { return std::cos(x); });
  r.add_pointwise("abs", [](double x) { return std::abs(x); });
  r.add_pointwise("sqrt", [](double x) { return std::sqrt(x); });
  return r;
}

namespace {

std::string describe(const VarType& t) { return to_string(t); }

class TypeTable {
 public:
  explicit TypeTable(const Decapode& d) : d_(d) {
    for (const Var& v : d.vars()) types_.push_back(v.type);
  }

  VarType& operator[](VarId v) { return types_[v]; }

  VarId id(const std::string& name) const { return d_.var_id(name); }

  VarType known(const std::string& name, const std::string& op) const {
    const VarType t = types_[id(name)];
    if (t.is_infer()) {
      throw Error(ErrorCode::BindingTypeError, "cannot determine the type of '" + name + "' used by " + op);
    }
    return t;
  }

  void expect(const std::string& name, std::optional<FormType> want, const std::string& op) const {
    const VarType t = known(name, op);
    if (want && (!t.is_form() || t.form != *want)) {
      throw Error(ErrorCode::BindingTypeError,
                  "operator " + op + " expects " + to_string(*want) + " but '" + name + "' is " + describe(t));
    }
  }

  void produce(const std::string& name, VarType t, const std::string& op) {
    VarType& slot = types_[id(name)];
    if (slot.is_infer()) {
      slot = t;
    } else if (slot != t) {
      throw Error(ErrorCode::BindingTypeError,
                  "operator " + op + " produces " + describe(t) + " but '" + name + "' is " + describe(slot));
    }
  }

  const std::vector<VarType>& all() const { return types_; }

 private:
  const Decapode& d_;
  std::vector<VarType> types_;
};

// The non-Literal operand type, requiring all form operands to agree.
VarType broadcast_type(const TypeTable& types, const std::vector<std::string>& inputs, const std::string& op) {
  std::optional<VarType> form;
  for (const std::string& in : inputs) {
    const VarType t = types.known(in, op);
    if (t.is_literal()) continue;
    if (form && *form != t) {
      throw Error(ErrorCode::BindingTypeError, "operator " + op + " mixes " + describe(*form) + " and " + describe(t));
    }
    form = t;
  }
  return form.value_or(VarType::literal());
}

}  // namespace

ExecutableProgram bind(const Schedule& s, const OperatorRegistry& registry, const SimplicialMesh2D& mesh,
                       const ParameterValues& parameters) {
  ExecutableProgram p;
  p.schedule_ = s;
  const Decapode& d = p.schedule_.source;
  TypeTable types(d);
  const std::size_t n = d.vars().size();

  std::vector<bool> used(n, false);
  for (const Call& c : s.calls) {
    for (const std::string& in : c.inputs) used[d.var_id(in)] = true;
    if (c.kind == CallKind::Unary && !registry.unary(c.op)) {
      if (auto v = d.find_var(c.op); v && d.var(*v).parameter) used[*v] = true;
    }
  }

  p.prototype_.slots.assign(n, Eigen::VectorXd());
  for (VarId v = 0; v < n; ++v) {
    const Var& var = d.var(v);
    if (!(var.parameter || var.type.is_literal()) || !used[v]) continue;
    auto it = parameters.find(var.name);
    if (it == parameters.end()) {
      throw Error(ErrorCode::MissingBinding, "parameter '" + var.name + "' has no value");
    }
    const auto size = static_cast<std::size_t>(it->second.size());
    if (types[v].is_infer()) {
      if (size != 1) {
        throw Error(ErrorCode::BindingTypeError, "parameter '" + var.name + "' needs a declared form type");
      }
      types[v] = VarType::literal();
    }
    const std::size_t want = types[v].is_literal() ? 1 : mesh.form_size(types[v].form);
    if (size != want) {
      throw Error(ErrorCode::BindingTypeError, "parameter '" + var.name + "' has " + std::to_string(size) +
                                                   " values, " + describe(types[v]) + " needs " + std::to_string(want));
    }
    p.prototype_.slots[v] = it->second;
  }

  for (const std::string& name : s.state_vars) {
    const VarId v = d.var_id(name);
    if (!types[v].is_form()) {
      throw Error(ErrorCode::BindingTypeError, "state variable '" + name + "' has no form type");
    }
    p.state_slots_.push_back(v);
    p.state_types_.push_back(types[v].form);
  }

  for (const Call& c : s.calls) {
    ExecutableProgram::BoundCall bc;
    bc.out = d.var_id(c.output);
    for (const std::string& in : c.inputs) bc.in.push_back(d.var_id(in));
    switch (c.kind) {
      case CallKind::Unary: {
        const UnaryKernel* k = registry.unary(c.op);
        if (k == nullptr) {
          auto param = d.find_var(c.op);
          if (!param || !d.var(*param).parameter) {
            throw Error(ErrorCode::MissingBinding, "no binding for operator '" + c.op + "'");
          }
          const VarType in = types.known(c.inputs[0], c.op);
          const VarType scale = types[*param];
          bc.step = ExecutableProgram::Step::Scale;
          bc.scale_slot = *param;
          types.produce(c.output, in.is_literal() ? scale : in, c.op);
          if (scale.is_form() && in.is_form() && scale != in) {
            throw Error(ErrorCode::BindingTypeError, "parameter " + c.op + " is " + describe(scale) + " but '" +
                                                         c.inputs[0] + "' is " + describe(in));
          }
          break;
        }
        types.expect(c.inputs[0], k->domain, c.op);
        types.produce(c.output, k->codomain ? VarType::of(*k->codomain) : types.known(c.inputs[0], c.op), c.op);
        bc.step = ExecutableProgram::Step::Unary;
        if (k->matrix) {
          std::shared_ptr<const OperatorMatrix> m = k->matrix();
          if ((k->domain && m->domain() != *k->domain) || (k->codomain && m->codomain() != *k->codomain)) {
            throw Error(ErrorCode::BindingTypeError, "matrix bound to " + c.op + " maps " + to_string(m->domain()) +
                                                         " to " + to_string(m->codomain()));
          }
          bc.unary = [m](const Eigen::VectorXd& in, Eigen::VectorXd& out) { m->apply(in, out); };
        } else {
          bc.unary = k->fn;
        }
        break;
      }
      case CallKind::Binary: {
        const BinaryKernel* k = registry.binary(c.op);
        if (k == nullptr) throw Error(ErrorCode::MissingBinding, "no binding for operator '" + c.op + "'");
        types.expect(c.inputs[0], k->left, c.op);
        types.expect(c.inputs[1], k->right, c.op);
        types.produce(c.output, k->result ? VarType::of(*k->result) : broadcast_type(types, c.inputs, c.op), c.op);
        bc.step = ExecutableProgram::Step::Binary;
        bc.binary = k->fn;
        break;
      }
      case CallKind::Varargs: {
        const VarargsKernel* k = registry.varargs(c.op);
        if (k == nullptr) throw Error(ErrorCode::MissingBinding, "no binding for operator '" + c.op + "'");
        types.produce(c.output, broadcast_type(types, c.inputs, c.op), c.op);
        bc.step = ExecutableProgram::Step::Varargs;
        bc.varargs = k->fn;
        p.max_args_ = std::max(p.max_args_, c.inputs.size());
        break;
      }
      case CallKind::Mask:
        bc.step = ExecutableProgram::Step::Mask;
        bc.mask = c.mask;
        break;
    }
    p.calls_.push_back(std::move(bc));
  }

  for (std::size_t i = 0; i < s.tangent_vars.size(); ++i) {
    const auto& [tangent, state] = s.tangent_vars[i];
    const VarId v = d.var_id(tangent);
    types.produce(tangent, VarType::of(p.state_types_[i]), "∂ₜ");
    p.tangent_slots_.push_back(v);
  }

  p.slot_types_ = types.all();
  for (VarId v = 0; v < n; ++v) {
    const VarType t = p.slot_types_[v];
    if (t.is_infer() || p.prototype_.slots[v].size() > 0) continue;
    p.prototype_.slots[v] = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(t.is_literal() ? 1 : mesh.form_size(t.form)));
  }

  for (std::size_t ci = 0; ci < s.calls.size(); ++ci) {
    const Call& c = s.calls[ci];
    if (c.kind != CallKind::Mask) continue;
    const BoundaryMask& m = p.schedule_.masks.at(c.mask);
    const auto size = static_cast<std::size_t>(p.prototype_.slots[d.var_id(m.target)].size());
    for (std::size_t i : m.indices) {
      if (i >= size) {
        throw Error(ErrorCode::InvalidArgument,
                    "mask index " + std::to_string(i) + " is outside '" + m.target + "' of length " + std::to_string(size));
      }
    }
    for (std::size_t k = 0; k < p.state_slots_.size(); ++k) {
      if (p.state_slots_[k] == d.var_id(m.target)) {
        p.state_masks_.push_back(c.mask);
        p.state_mask_targets_.push_back(k);
      }
    }
  }
  return p;
}

VarType ExecutableProgram::var_type(const std::string& name) const {
  return slot_types_.at(schedule_.source.var_id(name));
}

std::size_t ExecutableProgram::var_size(const std::string& name) const {
  return static_cast<std::size_t>(prototype_.slots.at(schedule_.source.var_id(name)).size());
}

Workspace ExecutableProgram::make_workspace() const {
  Workspace ws = prototype_;
  ws.args.assign(max_args_, nullptr);
  return ws;
}

void ExecutableProgram::apply_mask(const BoundaryMask& m, Eigen::VectorXd& v) const {
  if (m.mode == MaskMode::SetZero) {
    for (std::size_t i : m.indices) v[static_cast<Eigen::Index>(i)] = 0.0;
  } else {
    for (std::size_t j = 0; j < m.indices.size(); ++j) v[static_cast<Eigen::Index>(m.indices[j])] = m.values[j];
  }
}

void ExecutableProgram::apply_state_masks(std::vector<Eigen::VectorXd>& state) const {
  for (std::size_t i = 0; i < state_masks_.size(); ++i) {
    apply_mask(schedule_.masks[state_masks_[i]], state.at(state_mask_targets_[i]));
  }
}

void ExecutableProgram::evaluate(const std::vector<Eigen::VectorXd>& state, double /*t*/, Workspace& ws,
                                 std::vector<Eigen::VectorXd>& tangent) const {
  if (state.size() != state_slots_.size()) {
    throw Error(ErrorCode::InvalidArgument, "program has " + std::to_string(state_slots_.size()) +
                                                " state variables, got " + std::to_string(state.size()));
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    Eigen::VectorXd& slot = ws.slots[state_slots_[i]];
    if (state[i].size() != slot.size()) {
      throw Error(ErrorCode::InvalidArgument, "state '" + schedule_.state_vars[i] + "' has length " +
                                                  std::to_string(state[i].size()) + ", expected " +
                                                  std::to_string(slot.size()));
    }
    slot = state[i];
  }
  for (const BoundCall& c : calls_) {
    Eigen::VectorXd& out = ws.slots[c.out];
    switch (c.step) {
      case Step::Unary: c.unary(ws.slots[c.in[0]], out); break;
      case Step::Scale: {
        const Eigen::VectorXd& k = ws.slots[c.scale_slot];
        const Eigen::VectorXd& in = ws.slots[c.in[0]];
        if (k.size() == 1) {
          out = k[0] * in;
        } else if (in.size() == 1) {
          out = in[0] * k;
        } else {
          out = k.cwiseProduct(in);
        }
        break;
      }
      case Step::Binary: c.binary(ws.slots[c.in[0]], ws.slots[c.in[1]], out); break;
      case Step::Varargs:
        for (std::size_t i = 0; i < c.in.size(); ++i) ws.args[i] = &ws.slots[c.in[i]];
        c.varargs(std::span<const Eigen::VectorXd* const>(ws.args.data(), c.in.size()), out);
        break;
      case Step::Mask: apply_mask(schedule_.masks[c.mask], out); break;
    }
  }
  tangent.resize(tangent_slots_.size());
  for (std::size_t i = 0; i < tangent_slots_.size(); ++i) tangent[i] = ws.slots[tangent_slots_[i]];
}

std::vector<Eigen::VectorXd> ExecutableProgram::evaluate(const std::vector<Eigen::VectorXd>& state, double t) const {
  Workspace ws = make_workspace();
  std::vector<Eigen::VectorXd> tangent;
  evaluate(state, t, ws, tangent);
  return tangent;
}

const Eigen::VectorXd& ExecutableProgram::value(const Workspace& ws, const std::string& name) const {
  return ws.slots.at(schedule_.source.var_id(name));
}

}  // namespace decapode
