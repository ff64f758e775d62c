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
#include <string_view>
#include <vector>

#include "decapode/decapode.hpp"

namespace decapode {

/// A Decapode plus the optional "exposed" port list of a composition component.
struct DecapodeDocument {
  Decapode decapode;
  std::vector<std::string> exposed;
};

/// Tables "Var", "TVar", "Op1", "Op2", "Σ", "Summand" as arrays of row
/// objects with 0-based references. "exposed" is written when non-empty.
std::string decapode_to_json(const Decapode& d, const std::vector<std::string>& exposed = {}, int indent = 2);

/// Throws malformed-input on bad JSON, missing fields or dangling references.
DecapodeDocument decapode_from_json(std::string_view text);

}  // namespace decapode
