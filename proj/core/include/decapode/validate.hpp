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

#include <string>
#include <vector>

#include "decapode/decapode.hpp"

namespace decapode {

struct Violation {
  /// 1: dependency cycle. 2: a state variable without exactly one ∂ₜ.
  /// 3: a computed variable with no definition. 4: a variable with several
  /// definitions (or a state/parameter variable that is also computed).
  int rule = 0;
  std::string element;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
  bool has(int rule, const std::string& element) const;
  /// One "rule N: message" line per violation.
  std::string to_string() const;
};

/// Structural compilability check. Throws invalid-argument when a state name
/// is not a variable of d.
ValidationReport validate(const Decapode& d, const std::vector<std::string>& state_vars);

/// Number of non-∂ₜ rows (Op1, Op2 or Σ) writing each var, indexed by VarId.
std::vector<std::size_t> definition_counts(const Decapode& d);

}  // namespace decapode
