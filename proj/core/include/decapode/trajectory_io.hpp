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
#include <string>
#include <vector>

#include "decapode/mesh.hpp"
#include "decapode/solver.hpp"

namespace decapode {

/// Header "time,var,index,value", then one row per entry of every snapshot
/// with %.17g values.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void save_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Legacy ASCII VTK POLYDATA of the mesh. Fields living on vertices (Form0,
/// DualForm2) go to POINT_DATA, fields on triangles (Form2, DualForm0) to
/// CELL_DATA; edge fields are skipped.
void write_vtk(std::ostream& out, const SimplicialMesh2D& mesh, const SimState& state);

/// One file per snapshot, "<prefix>_<NNNN>.vtk". Returns the paths written.
std::vector<std::string> save_vtk_series(const std::string& prefix, const SimplicialMesh2D& mesh,
                                         const Trajectory& traj);

}  // namespace decapode
