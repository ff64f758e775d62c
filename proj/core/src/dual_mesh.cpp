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

#include "decapode/dual_mesh.hpp"

#include <numeric>
#include <string>

#include <Eigen/Geometry>

#include "decapode/error.hpp"

namespace decapode {

namespace {

double triangle_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

Point circumcenter(const Point& a, const Point& b, const Point& c) {
  const Eigen::Vector3d ab = b - a;
  const Eigen::Vector3d ac = c - a;
  const Eigen::Vector3d n = ab.cross(ac);
  const Eigen::Vector3d offset =
      (ac.squaredNorm() * n.cross(ab) + ab.squaredNorm() * ac.cross(n)) / (2.0 * n.squaredNorm());
  return a + offset;
}

// Cosine of the largest angle; non-positive means right or obtuse.
bool strictly_acute(const Point& a, const Point& b, const Point& c) {
  constexpr double kTolerance = 1e-12;
  const auto acute_at = [](const Point& p, const Point& q, const Point& r) {
    const Eigen::Vector3d u = q - p;
    const Eigen::Vector3d v = r - p;
    return u.dot(v) > kTolerance * u.norm() * v.norm();
  };
  return acute_at(a, b, c) && acute_at(b, c, a) && acute_at(c, a, b);
}

}  // namespace

double DualMesh::total_area() const {
  return std::accumulate(triangle_areas.begin(), triangle_areas.end(), 0.0);
}

double DualMesh::total_dual_area() const {
  return std::accumulate(dual_cell_areas.begin(), dual_cell_areas.end(), 0.0);
}

std::string to_string(Subdivision subdivision) {
  return subdivision == Subdivision::Barycentric ? "barycentric" : "circumcentric";
}

DualMesh build_dual(const SimplicialMesh2D& mesh, Subdivision subdivision) {
  const auto& verts = mesh.vertices();
  const std::size_t nt = mesh.num_triangles();
  const std::size_t ne = mesh.num_edges();

  DualMesh dual;
  dual.subdivision = subdivision;
  dual.dual_vertex_positions.resize(nt);
  dual.triangle_areas.resize(nt);
  dual.dual_segments.resize(nt);
  dual.dual_edge_lengths.assign(ne, 0.0);
  dual.dual_cell_areas.assign(mesh.num_vertices(), 0.0);
  dual.primal_edge_lengths.resize(ne);
  dual.edge_midpoints.resize(ne);

  for (std::size_t e = 0; e < ne; ++e) {
    const Point& p = verts[mesh.edges()[e][0]];
    const Point& q = verts[mesh.edges()[e][1]];
    dual.primal_edge_lengths[e] = (q - p).norm();
    dual.edge_midpoints[e] = 0.5 * (p + q);
  }

  for (std::size_t t = 0; t < nt; ++t) {
    const Triangle& tri = mesh.triangles()[t];
    const Point& a = verts[tri[0]];
    const Point& b = verts[tri[1]];
    const Point& c = verts[tri[2]];
    dual.triangle_areas[t] = triangle_area(a, b, c);

    Point center;
    if (subdivision == Subdivision::Barycentric) {
      center = (a + b + c) / 3.0;
    } else {
      if (!strictly_acute(a, b, c)) {
        throw NotWellCenteredError(
            t, "triangle " + std::to_string(t) +
                   " is right or obtuse; its circumcenter is not interior, use a barycentric dual");
      }
      center = circumcenter(a, b, c);
    }
    dual.dual_vertex_positions[t] = center;

    const auto& te = mesh.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const Point& mid = dual.edge_midpoints[te[i]];
      dual.dual_segments[t][i] = mid - center;
      dual.dual_edge_lengths[te[i]] += (mid - center).norm();
    }

    // Local edge order is (v0v1, v0v2, v1v2); each vertex touches two of them.
    const Point& m01 = dual.edge_midpoints[te[0]];
    const Point& m02 = dual.edge_midpoints[te[1]];
    const Point& m12 = dual.edge_midpoints[te[2]];
    dual.dual_cell_areas[tri[0]] += triangle_area(a, m01, center) + triangle_area(a, center, m02);
    dual.dual_cell_areas[tri[1]] += triangle_area(b, m01, center) + triangle_area(b, center, m12);
    dual.dual_cell_areas[tri[2]] += triangle_area(c, m02, center) + triangle_area(c, center, m12);
  }
  return dual;
}

}  // namespace decapode
