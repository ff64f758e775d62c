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

#include "decapode/form_type.hpp"

namespace decapode {

std::string to_string(FormType type) {
  std::string out = type.is_primal() ? "Form" : "DualForm";
  out += static_cast<char>('0' + type.degree);
  return out;
}

std::optional<FormType> parse_form_type(std::string_view text) {
  Primality primality = Primality::Primal;
  if (text.starts_with("DualForm")) {
    primality = Primality::Dual;
    text.remove_prefix(8);
  } else if (text.starts_with("Form")) {
    text.remove_prefix(4);
  } else {
    return std::nullopt;
  }
  if (text.size() != 1 || text[0] < '0' || text[0] > '2') return std::nullopt;
  return FormType{text[0] - '0', primality};
}

std::string to_string(VarType type) {
  switch (type.kind) {
    case VarType::Kind::Form: return to_string(type.form);
    case VarType::Kind::Literal: return "Literal";
    case VarType::Kind::Infer: return "Infer";
  }
  return "Infer";
}

std::optional<VarType> parse_var_type(std::string_view text) {
  if (text == "Literal") return VarType::literal();
  if (text == "Infer") return VarType::infer();
  if (auto form = parse_form_type(text)) return VarType::of(*form);
  return std::nullopt;
}

}  // namespace decapode
