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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decapode/decapode.hpp"

namespace decapode {

/// Input and output form types of a fixed-signature operator.
struct OperatorSignature {
  std::vector<FormType> inputs;
  FormType output;
};

/// Maps ASCII spellings ("d0", "star1", "inv_star0", "dual_d1", "wedge01",
/// "lap0", "dt", "grad", "div", ...) and digit variants ("⋆0") onto the canonical symbols
/// ("d₀", "⋆₁", "⋆₀⁻¹", "d̃₁", "∧₀₁", "Δ₀", "∂ₜ"). Other names pass through.
std::string canonical_operator_name(std::string_view name);

/// Signatures of the de Rham complex operators (derivatives, stars and
/// their inverses, wedges, Δ₀) plus the flux gradient ∇ = ⋆₁d₀ and the
/// divergence ∇· = ⋆₀⁻¹d̃₁. nullopt for anything else.
std::optional<OperatorSignature> builtin_signature(std::string_view canonical);

/// Unary operators whose output has the type of their input.
bool is_type_preserving_unary(const Decapode& d, std::string_view op);

/// Propagates types to a fixpoint along operator signatures (both from inputs
/// to outputs and back), through ∂ₜ, Σ and type-preserving ops, and rewrites
/// the generic operators d, d̃, ⋆, ⋆⁻¹ and ∧ into their degree-indexed forms
/// once the operand types are known. Conflicts raise type-error.
void infer_types(Decapode& d);

}  // namespace decapode
