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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "decapode/form_type.hpp"

namespace decapode {

using VarId = std::size_t;

/// Operator name of the time-derivative rows that link a state variable to
/// its tangent variable.
inline constexpr std::string_view kTimeDerivative = "∂ₜ";
/// Operator name used for the calls generated from Σ rows.
inline constexpr std::string_view kSumOperator = "+";
/// Prefix of generated names for anonymous (unnamed) intermediate variables.
inline constexpr std::string_view kAnonymousPrefix = "•";

/// Variables of Literal type marked as parameters are runtime constants;
/// form-typed parameters are fixed fields. Neither needs a defining operator.
struct Var {
  std::string name;
  VarType type = VarType::infer();
  bool parameter = false;
};

struct TVar {
  VarId incl = 0;
};

struct Op1 {
  VarId src = 0;
  VarId tgt = 0;
  std::string op1;
};

struct Op2 {
  VarId proj1 = 0;
  VarId proj2 = 0;
  VarId res = 0;
  std::string op2;
};

struct Sigma {
  VarId sum = 0;
};

struct Summand {
  VarId summand = 0;
  std::size_t summation = 0;
};

/// The relational IR of a system of equations: a database over the tables
/// Var, TVar, Op1, Op2, Σ and Summand with foreign keys into Var (and, for
/// Summand.summation, into Σ).
///
/// Mutation goes through methods that keep foreign keys valid and variable
/// names unique. Several ∂ₜ rows on one source are representable (compositions
/// can produce them); validate() reports them.
class Decapode {
 public:
  const std::vector<Var>& vars() const { return vars_; }
  const std::vector<TVar>& tvars() const { return tvars_; }
  const std::vector<Op1>& op1s() const { return op1s_; }
  const std::vector<Op2>& op2s() const { return op2s_; }
  const std::vector<Sigma>& sigmas() const { return sigmas_; }
  const std::vector<Summand>& summands() const { return summands_; }

  const Var& var(VarId id) const { return vars_.at(id); }
  std::optional<VarId> find_var(std::string_view name) const;
  /// Throws invalid-argument when the name is unknown.
  VarId var_id(std::string_view name) const;

  /// Throws invalid-argument if the name is taken or empty.
  VarId add_var(std::string name, VarType type = VarType::infer(), bool parameter = false);
  /// Adds a var named "•N" with the smallest N not yet used.
  VarId add_anonymous_var(VarType type = VarType::infer());
  void set_type(VarId id, VarType type);
  void set_parameter(VarId id, bool parameter);
  void rename_var(VarId id, std::string name);

  std::size_t add_tvar(VarId incl);
  std::size_t add_op1(VarId src, VarId tgt, std::string op);
  std::size_t add_op2(VarId proj1, VarId proj2, VarId res, std::string op);
  /// Adds a Σ row and one Summand row per argument, in order.
  std::size_t add_sum(VarId sum, const std::vector<VarId>& args);
  void rename_op1(std::size_t row, std::string op);
  void rename_op2(std::size_t row, std::string op);

  /// Summand vars of Σ row s, in Summand-table order.
  std::vector<VarId> summands_of(std::size_t sigma) const;

  bool is_anonymous(VarId id) const;
  bool is_tangent(VarId id) const;
  /// Targets of the ∂ₜ rows whose source is id.
  std::vector<VarId> tangents_of(VarId id) const;

  /// Throws malformed-input on any dangling reference or duplicate name.
  void check_integrity() const;

 private:
  void check_var(VarId id, const char* role) const;

  std::vector<Var> vars_;
  std::vector<TVar> tvars_;
  std::vector<Op1> op1s_;
  std::vector<Op2> op2s_;
  std::vector<Sigma> sigmas_;
  std::vector<Summand> summands_;
  std::unordered_map<std::string, VarId> by_name_;
  std::size_t next_anonymous_ = 1;
};

/// Name given to the tangent variable of `state`, e.g. "C" -> "Ċ"
/// (combining dot above).
std::string tangent_name(std::string_view state);

/// Rewrites precomposed dot-above letters ("Ċ", U+010A) as the base letter
/// followed by the combining dot, the spelling tangent_name() produces.
std::string decompose_dot_above(std::string_view name);

/// True when there is a bijection of Vars that preserves types, parameter
/// flags and every table row (as multisets). With match_names, non-anonymous
/// vars must also keep their names.
bool isomorphic(const Decapode& a, const Decapode& b, bool match_names = false);

}  // namespace decapode
