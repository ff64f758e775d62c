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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace decapode {

enum class Primality { Primal, Dual };

/// Degree and primality of a discrete form in the 2-D de Rham complex.
/// A primal k-form lives on k-simplices; a dual k-form on the dual k-cells,
/// which correspond one-to-one with primal (2-k)-simplices.
struct FormType {
  int degree = 0;
  Primality primality = Primality::Primal;

  static constexpr FormType primal(int k) { return {k, Primality::Primal}; }
  static constexpr FormType dual(int k) { return {k, Primality::Dual}; }

  constexpr bool is_primal() const { return primality == Primality::Primal; }
  constexpr bool is_dual() const { return primality == Primality::Dual; }
  /// Dimension of the primal simplices that carry the values.
  constexpr int simplex_dimension() const { return is_primal() ? degree : 2 - degree; }

  friend constexpr bool operator==(const FormType&, const FormType&) = default;
  friend constexpr auto operator<=>(const FormType&, const FormType&) = default;
};

/// "Form0" .. "Form2", "DualForm0" .. "DualForm2".
std::string to_string(FormType type);
std::optional<FormType> parse_form_type(std::string_view text);

/// Type attribute of a Var row: a form type, a scalar literal, or not yet known.
struct VarType {
  enum class Kind { Form, Literal, Infer };

  Kind kind = Kind::Infer;
  FormType form{};

  static constexpr VarType of(FormType f) { return {Kind::Form, f}; }
  static constexpr VarType literal() { return {Kind::Literal, {}}; }
  static constexpr VarType infer() { return {Kind::Infer, {}}; }

  constexpr bool is_form() const { return kind == Kind::Form; }
  constexpr bool is_literal() const { return kind == Kind::Literal; }
  constexpr bool is_infer() const { return kind == Kind::Infer; }

  friend constexpr bool operator==(const VarType& a, const VarType& b) {
    return a.kind == b.kind && (a.kind != Kind::Form || a.form == b.form);
  }
};

std::string to_string(VarType type);
std::optional<VarType> parse_var_type(std::string_view text);

}  // namespace decapode
