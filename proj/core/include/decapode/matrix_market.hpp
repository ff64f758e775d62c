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

#include <filesystem>
#include <iosfwd>

#include "decapode/operators.hpp"

namespace decapode {

/// Matrix Market coordinate/real/general, 1-based, 17 significant digits.
/// Factorized operators are materialized first.
void write_matrix_market(const OperatorMatrix& op, std::ostream& out);
void save_matrix_market(const OperatorMatrix& op, const std::filesystem::path& path);

SparseMatrix read_matrix_market(std::istream& in);

}  // namespace decapode
