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

struct ParseOptions {
  /// Run infer_types on the result.
  bool infer = true;
};

struct ParseResult {
  Decapode decapode;
  /// Non-fatal diagnostics such as "multiple definitions of ϕ".
  std::vector<std::string> warnings;
  /// Names listed by `expose` statements, in order.
  std::vector<std::string> exposed;
};

/// Parses the equation language (see docs/grammar.ebnf). Throws SyntaxError
/// with a 1-based line and column (in code points) and type-error on
/// conflicting ascriptions or inference failures.
ParseResult parse_decapode_source(std::string_view source, const ParseOptions& options = {});

Decapode parse_decapode(std::string_view source, const ParseOptions& options = {});

/// One statement per row; re-parsing the output gives an isomorphic Decapode.
std::string print_decapode(const Decapode& d, const std::vector<std::string>& exposed = {});

}  // namespace decapode
