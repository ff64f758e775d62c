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
#include <vector>

#include "decapode/mesh.hpp"

namespace decapode {

enum class Subdivision { Barycentric, Circumcentric };

/// Geometry of the dual complex of a SimplicialMesh2D.
///
/// Each triangle contributes one dual vertex (its barycenter or
/// circumcenter). The dual edge of a primal edge is the polyline
/// dual vertex -> edge midpoint -> dual vertex, one segment per incident
/// triangle; boundary edges therefore end at their own midpoint. The dual
/// cell of a vertex is the union, over incident triangles, of the quad
/// (vertex, midpoint, dual vertex, midpoint); boundary cells are closed by
/// primal half-edges, so the cells partition the surface.
struct DualMesh {
  Subdivision subdivision = Subdivision::Barycentric;
  std::vector<Point> dual_vertex_positions;  // per triangle
  std::vector<double> dual_edge_lengths;     // per primal edge
  std::vector<double> dual_cell_areas;       // per primal vertex
  std::vector<double> primal_edge_lengths;   // per primal edge
  std::vector<double> triangle_areas;        // per triangle
  std::vector<Point> edge_midpoints;         // per primal edge
  /// Vector from the dual vertex of t to the midpoint of each of its edges,
  /// in the order of SimplicialMesh2D::triangle_edges(t).
  std::vector<std::array<Point, 3>> dual_segments;

  double total_area() const;
  double total_dual_area() const;
};

/// Throws NotWellCenteredError for Circumcentric duals of meshes with a right
/// or obtuse triangle.
DualMesh build_dual(const SimplicialMesh2D& mesh, Subdivision subdivision = Subdivision::Barycentric);

std::string to_string(Subdivision subdivision);

}  // namespace decapode
