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

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "decapode/operator_cache.hpp"
#include "decapode/operators.hpp"
#include "decapode/schedule.hpp"

namespace decapode {

using UnaryFn = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;
using BinaryFn = std::function<void(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& out)>;
using VarargsFn = std::function<void(std::span<const Eigen::VectorXd* const> in, Eigen::VectorXd& out)>;

/// A unary kernel. An unset domain accepts any input; an unset codomain
/// means the output has the input's type. Linear kernels supply a matrix
/// factory instead of fn; bind() calls it once.
struct UnaryKernel {
  std::optional<FormType> domain;
  std::optional<FormType> codomain;
  UnaryFn fn;
  std::function<std::shared_ptr<const OperatorMatrix>()> matrix;
};

/// Unset operand types accept anything; an unset result takes the type of
/// the non-Literal operand (Literal operands broadcast).
struct BinaryKernel {
  std::optional<FormType> left;
  std::optional<FormType> right;
  std::optional<FormType> result;
  BinaryFn fn;
};

/// All operands share the output's type (Literal operands broadcast).
struct VarargsKernel {
  VarargsFn fn;
};

class OperatorRegistry {
 public:
  void add_unary(std::string name, UnaryKernel kernel);
  void add_linear(std::string name, std::shared_ptr<const OperatorMatrix> matrix);
  void add_linear(std::string name, FormType domain, FormType codomain,
                  std::function<std::shared_ptr<const OperatorMatrix>()> factory);
  /// Type-preserving elementwise map.
  void add_pointwise(std::string name, std::function<double(double)> f);
  void add_binary(std::string name, BinaryKernel kernel);
  void add_varargs(std::string name, VarargsKernel kernel);

  const UnaryKernel* unary(const std::string& name) const;
  const BinaryKernel* binary(const std::string& name) const;
  const VarargsKernel* varargs(const std::string& name) const;

 private:
  std::map<std::string, UnaryKernel> unary_;
  std::map<std::string, BinaryKernel> binary_;
  std::map<std::string, VarargsKernel> varargs_;
};

/// The de Rham operators of the cache's mesh (built on first bind), Δ₀,
/// ∇ = ⋆₁d₀, ∇· = ⋆₀⁻¹d̃₁, the primal wedges, "*" (broadcasting product),
/// "+" (sum) and the pointwise maps neg, exp, sin, cos, abs, sqrt.
OperatorRegistry standard_registry(std::shared_ptr<const OperatorCache> cache,
                                   HodgeVariant variant = HodgeVariant::Diagonal);

/// Values for parameter (and other Literal) vars: length 1 for scalars, the
/// form-space length for fields.
using ParameterValues = std::map<std::string, Eigen::VectorXd>;

/// Per-caller scratch: one buffer per var, sized at bind.
struct Workspace {
  std::vector<Eigen::VectorXd> slots;
  std::vector<const Eigen::VectorXd*> args;
};

/// The compiled right-hand side: the schedule's calls over pre-bound kernels.
class ExecutableProgram {
 public:
  const Schedule& schedule() const { return schedule_; }
  std::size_t num_states() const { return state_slots_.size(); }
  const std::vector<std::string>& state_vars() const { return schedule_.state_vars; }
  FormType state_type(std::size_t i) const { return state_types_.at(i); }
  /// The type a var was bound with (Literal for scalars).
  VarType var_type(const std::string& name) const;
  std::size_t var_size(const std::string& name) const;

  Workspace make_workspace() const;

  /// Copies the state in, runs every call, and copies the tangents out
  /// (tangent[i] is resized on first use only). Throws invalid-argument on a
  /// state layout mismatch. Reentrant across distinct workspaces.
  void evaluate(const std::vector<Eigen::VectorXd>& state, double t, Workspace& ws,
                std::vector<Eigen::VectorXd>& tangent) const;
  std::vector<Eigen::VectorXd> evaluate(const std::vector<Eigen::VectorXd>& state, double t = 0.0) const;

  /// Applies the masks whose targets are state vars, in schedule order.
  void apply_state_masks(std::vector<Eigen::VectorXd>& state) const;
  bool has_state_masks() const { return !state_masks_.empty(); }

  /// Value of a var after the last evaluate with ws (for diagnostics).
  const Eigen::VectorXd& value(const Workspace& ws, const std::string& name) const;

 private:
  friend ExecutableProgram bind(const Schedule&, const OperatorRegistry&, const SimplicialMesh2D&,
                                const ParameterValues&);

  enum class Step { Unary, Scale, Binary, Varargs, Mask };
  struct BoundCall {
    Step step;
    std::vector<std::size_t> in;
    std::size_t out = 0;
    UnaryFn unary;
    BinaryFn binary;
    VarargsFn varargs;
    std::size_t scale_slot = 0;
    std::size_t mask = 0;
  };

  void apply_mask(const BoundaryMask& m, Eigen::VectorXd& v) const;

  Schedule schedule_;
  std::vector<BoundCall> calls_;
  std::vector<std::size_t> state_slots_;
  std::vector<FormType> state_types_;
  std::vector<std::size_t> tangent_slots_;
  std::vector<VarType> slot_types_;
  std::vector<std::size_t> state_masks_;
  std::vector<std::size_t> state_mask_targets_;
  Workspace prototype_;
  std::size_t max_args_ = 0;
};

/// Resolves every call against the registry (a unary op named after a
/// parameter scales by it), checks form types along the schedule, and sizes
/// one buffer per var. Throws missing-binding naming an operator or
/// parameter with no binding, and binding-type-error on a type mismatch.
ExecutableProgram bind(const Schedule& s, const OperatorRegistry& registry, const SimplicialMesh2D& mesh,
                       const ParameterValues& parameters = {});

}  // namespace decapode
