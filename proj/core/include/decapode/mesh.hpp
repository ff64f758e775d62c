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
#include <vector>

#include <Eigen/Core>

#include "decapode/form_type.hpp"

namespace decapode {

using Point = Eigen::Vector3d;
using Edge = std::array<std::size_t, 2>;
using Triangle = std::array<std::size_t, 3>;

/// Primal 2-D triangulation with canonical orientation.
///
/// Edges are stored with src < tgt and sorted lexicographically. Triangles
/// keep their input order but their vertex triples are sorted ascending, so
/// the orientation of every simplex is implied by its vertex indices and the
/// incidence matrices carry all sign information. Because ascending order
/// cannot always be made counterclockwise, the sign of each sorted triple's
/// planar area is kept in triangle_orientation().
///
/// Immutable after construction.
class SimplicialMesh2D {
 public:
  SimplicialMesh2D() = default;

  /// Builds edges, incidences and boundary flags. Throws malformed-input for
  /// out-of-range indices, repeated vertices, or zero-area triangles. A mesh
  /// with vertices and no triangles is allowed (0-forms only).
  static SimplicialMesh2D from_triangles(std::vector<Point> vertices, std::vector<Triangle> triangles);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  /// Number of simplices of dimension 0, 1 or 2.
  std::size_t num_simplices(int dimension) const;
  /// Length of a cochain of the given type on this mesh.
  std::size_t form_size(FormType type) const { return num_simplices(type.simplex_dimension()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// Edge indices of triangle t as {(v0,v1), (v0,v2), (v1,v2)}.
  const std::array<std::size_t, 3>& triangle_edges(std::size_t t) const { return triangle_edges_[t]; }
  /// Triangles incident to edge e (one for boundary edges, two for interior).
  const std::vector<std::size_t>& edge_triangles(std::size_t e) const { return edge_triangles_[e]; }
  /// +1 when the sorted vertex triple is counterclockwise in the xy-plane.
  int triangle_orientation(std::size_t t) const { return triangle_orientation_[t]; }

  const std::vector<bool>& boundary_vertex_flags() const { return boundary_vertices_; }
  const std::vector<bool>& boundary_edge_flags() const { return boundary_edges_; }
  std::vector<std::size_t> boundary_vertices() const;

  /// Index of edge {a, b} in either orientation, or num_edges() if absent.
  std::size_t find_edge(std::size_t a, std::size_t b) const;

  double edge_length(std::size_t e) const;
  double min_edge_length() const;

  friend bool operator==(const SimplicialMesh2D& a, const SimplicialMesh2D& b) {
    return a.vertices_ == b.vertices_ && a.triangles_ == b.triangles_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<std::size_t, 3>> triangle_edges_;
  std::vector<std::vector<std::size_t>> edge_triangles_;
  std::vector<int> triangle_orientation_;
  std::vector<bool> boundary_vertices_;
  std::vector<bool> boundary_edges_;
};

/// Structured triangulation of [0,lx]x[0,ly]: (nx+1)(ny+1) vertices in
/// row-major order, each cell split along its (i,j)-(i+1,j+1) diagonal.
SimplicialMesh2D generate_grid(std::size_t nx, std::size_t ny, double lx, double ly);

}  // namespace decapode
