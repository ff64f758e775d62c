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

#include <ostream>

#include "decapode/error.hpp"

namespace decapode::cli {

/// Exit codes of the tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitModel = 2;
inline constexpr int kExitDiverged = 3;

/// 1 for io-error, 3 for diverged, 2 for everything else.
int exit_code(const Error& e);

/// Runs one invocation of the tool, writing to out and err instead of the
/// process streams. Usage errors exit with kExitModel.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decapode::cli
