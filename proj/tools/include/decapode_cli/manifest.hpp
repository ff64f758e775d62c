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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "decapode/compose.hpp"
#include "decapode/dual_mesh.hpp"
#include "decapode/operators.hpp"
#include "decapode/schedule.hpp"
#include "decapode/solver.hpp"

namespace decapode::cli {

struct MeshSource {
  bool generate = true;
  std::size_t nx = 16;
  std::size_t ny = 16;
  double lx = 1.0;
  double ly = 1.0;
  std::filesystem::path obj;
};

/// "sin_sin": sin(πx/lx) sin(πy/ly); "constant": value; "gaussian":
/// amplitude·exp(-|p - center|² / (2 width²)); "values": given verbatim.
struct InitialProfile {
  std::string profile = "constant";
  double value = 0.0;
  std::array<double, 2> center{0.5, 0.5};
  double width = 0.1;
  double amplitude = 1.0;
  std::vector<double> values;
};

struct MaskEntry {
  std::string target;
  /// "boundary" or "indices".
  std::string where = "boundary";
  std::vector<std::size_t> indices;
  MaskMode mode = MaskMode::SetZero;
  double value = 0.0;
};

/// Analytic comparison; only "heat_sin_sin" (decaying sin·sin eigenmode).
struct ReferenceEntry {
  std::string type;
  std::string var;
  double diffusivity = 1.0;
};

struct RunManifest {
  std::filesystem::path base_dir;
  MeshSource mesh;
  Subdivision subdivision = Subdivision::Barycentric;
  HodgeVariant hodge = HodgeVariant::Geometric;
  std::vector<std::filesystem::path> models;
  std::optional<std::filesystem::path> pattern;
  std::vector<std::string> state;
  std::map<std::string, std::vector<double>> parameters;
  std::map<std::string, InitialProfile> initial;
  std::vector<MaskEntry> masks;
  SolverConfig solver;
  /// dt = cfl · h_min² / diffusivity when set.
  std::optional<double> cfl;
  double cfl_diffusivity = 1.0;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> vtk_prefix;
  std::optional<std::filesystem::path> dot;
  std::optional<ReferenceEntry> reference;
};

/// Reads a JSON manifest; relative paths resolve against its directory.
/// Throws io-error when unreadable and malformed-input on bad content.
RunManifest load_manifest(const std::filesystem::path& path);

struct RunSummary {
  std::size_t steps = 0;
  double dt = 0.0;
  double final_time = 0.0;
  std::optional<double> reference_error;
  std::vector<std::filesystem::path> written;
};

/// Reads a component file (equation language or decapode JSON).
OpenDecapode load_model_file(const std::filesystem::path& path);

/// The manifest's model: the single model, or the composite of all models
/// under the pattern. Types are inferred after gluing.
Decapode assemble_model(const RunManifest& m);

/// Builds everything, integrates, writes the outputs and prints a summary
/// to log. emit_dot writes the model's DOT next to the other outputs.
RunSummary run_manifest(const RunManifest& m, bool emit_dot, std::ostream& log);

}  // namespace decapode::cli
