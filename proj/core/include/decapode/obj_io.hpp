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

#include "decapode/mesh.hpp"

namespace decapode {

/// Reads the ASCII OBJ subset `v x y [z]` / `f i j k` (1-based, negative
/// indices relative to the current vertex count). Texture, normal, group and
/// material records are skipped; `f a/b/c` keeps the position index.
/// Non-triangular faces raise unsupported-format; dangling indices raise
/// malformed-input.
SimplicialMesh2D read_obj(std::istream& in);
SimplicialMesh2D load_obj(const std::filesystem::path& path);

/// Writes `v x y z` and `f i j k` records with 17 significant digits, so a
/// mesh survives a write/read cycle bit for bit.
void write_obj(const SimplicialMesh2D& mesh, std::ostream& out);
void save_obj(const SimplicialMesh2D& mesh, const std::filesystem::path& path);

}  // namespace decapode
