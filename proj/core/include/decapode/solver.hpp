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
#include <limits>
#include <string>
#include <vector>

#include "decapode/operators.hpp"
#include "decapode/program.hpp"

namespace decapode {

enum class Method { Euler, RK4 };

std::string to_string(Method method);

struct SolverConfig {
  Method method = Method::RK4;
  double dt = 0.0;
  double t_end = 0.0;
  std::size_t record_every = 1;
  /// Largest |value| tolerated in any state entry.
  double divergence_threshold = 1e12;

  /// Throws invalid-argument unless dt > 0, t_end ≥ 0 and record_every ≥ 1.
  void check() const;
};

/// The state variables of a program at one time, in the program's order.
struct SimState {
  std::vector<std::string> names;
  std::vector<Cochain> fields;
  double time = 0.0;

  /// Throws invalid-argument on an unknown name.
  const Cochain& field(const std::string& name) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SimState> snapshots;
};

/// A zero state laid out for the program's state vars on mesh.
SimState make_state(const ExecutableProgram& program, const SimplicialMesh2D& mesh);

/// Fixed-step explicit integration from init.time to cfg.t_end; the last
/// step is shortened to land on t_end. State masks are applied to the
/// initial state, to every stage state and after every step. Snapshots are
/// taken every record_every steps and at the final time. Throws DivergedError
/// when an entry becomes non-finite or exceeds the threshold, and
/// invalid-argument when init does not match the program's layout.
Trajectory integrate(const ExecutableProgram& program, const SimState& init, const SolverConfig& cfg);

/// Σ (⋆₀ values): the discrete integral of a primal 0-form.
double total_quantity(const SimState& state, const std::string& var, const OperatorMatrix& hodge0);

/// c · h_min² / k with h_min the shortest edge; the explicit diffusion
/// stability bound used for choosing dt.
double diffusion_cfl_dt(const SimplicialMesh2D& mesh, double diffusivity, double c = 0.2);

}  // namespace decapode
