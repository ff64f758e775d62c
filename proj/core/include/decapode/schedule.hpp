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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "decapode/decapode.hpp"
#include "decapode/mesh.hpp"

namespace decapode {

enum class CallKind { Unary, Binary, Varargs, Mask };

std::string to_string(CallKind kind);

struct Call {
  CallKind kind = CallKind::Unary;
  std::string op;
  std::vector<std::string> inputs;
  std::string output;
  /// Index into Schedule::masks for Mask calls.
  std::size_t mask = 0;

  friend bool operator==(const Call&, const Call&) = default;
};

enum class MaskMode { SetValue, SetZero };

struct BoundaryMask {
  std::string target;
  std::vector<std::size_t> indices;
  MaskMode mode = MaskMode::SetZero;
  /// One value per index for SetValue.
  std::vector<double> values;
};

struct Schedule {
  std::vector<Call> calls;
  std::vector<std::string> state_vars;
  /// (tangent name, state name), one per state var.
  std::vector<std::pair<std::string, std::string>> tangent_vars;
  std::vector<BoundaryMask> masks;
  /// The scheduled Decapode; binding reads var types from it.
  Decapode source;
};

/// Outcome of running the sweeps without validating first.
struct SweepResult {
  std::vector<Call> calls;
  /// Descriptions ("Op1 row 3: ...") of rows that never became ready.
  std::vector<std::string> unconsumed;
  std::size_t sweeps = 0;

  bool complete() const { return unconsumed.empty(); }
};

/// Repeated passes over Op1, Op2 and Σ in row order, emitting each row whose
/// inputs are all available and marking its output available; ∂ₜ rows are
/// skipped. State vars, parameters and Literal vars start available. Stops at
/// the first pass that emits nothing.
SweepResult sweep(const Decapode& d, const std::vector<std::string>& state_vars);

/// Validates, then sweeps. Throws not-compilable carrying the validation
/// report, or cyclic-dependency listing the stuck rows.
Schedule schedule(const Decapode& d, const std::vector<std::string>& state_vars);

/// Inserts one Mask call per mask: first for state vars and parameters, last
/// for tangent vars, otherwise right after the defining call (after any mask
/// already there). Throws invalid-argument on an unknown target or a values
/// length mismatch and, when mesh is given and the target's type known, on an
/// index outside the target's form space.
Schedule attach_masks(const Schedule& s, const std::vector<BoundaryMask>& masks,
                      const SimplicialMesh2D* mesh = nullptr);

/// Simplices on the boundary for the given form space: boundary vertices for
/// Form0 and DualForm2, boundary edges for Form1 and DualForm1, and triangles
/// with a boundary edge for Form2 and DualForm0.
std::vector<std::size_t> boundary_indices(const SimplicialMesh2D& mesh, FormType type);

/// JSON array of calls: {"kind", "op", "inputs", "output"} (+ "mask").
std::string schedule_to_json(const Schedule& s, int indent = 2);

/// One line per call, e.g. "  2: •3 = ⋆₁(•2)".
std::string schedule_listing(const Schedule& s);

}  // namespace decapode
