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

#include "decapode/decapode.hpp"

namespace decapode {

/// Graphviz rendering. Vars are ellipses (parameters diamonds, anonymous vars
/// drawn as •), Op1 rows labeled edges, ∂ₜ rows dashed unlabeled edges, Op2
/// rows boxes and Σ rows circles. Output depends only on the tables.
std::string to_dot(const Decapode& d, const std::string& graph_name = "decapode");

}  // namespace decapode
