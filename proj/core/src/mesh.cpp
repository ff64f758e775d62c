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

#include "decapode/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Geometry>

#include "decapode/error.hpp"

namespace decapode {

namespace {

double planar_cross(const Point& a, const Point& b, const Point& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

}  // namespace

SimplicialMesh2D SimplicialMesh2D::from_triangles(std::vector<Point> vertices,
                                                  std::vector<Triangle> triangles) {
  SimplicialMesh2D mesh;
  mesh.vertices_ = std::move(vertices);
  const std::size_t nv = mesh.vertices_.size();

  for (const Point& p : mesh.vertices_) {
    if (!p.allFinite()) throw Error(ErrorCode::MalformedInput, "non-finite vertex coordinate");
  }

  for (std::size_t t = 0; t < triangles.size(); ++t) {
    Triangle& tri = triangles[t];
    for (std::size_t v : tri) {
      if (v >= nv) {
        throw Error(ErrorCode::MalformedInput,
                    "triangle " + std::to_string(t) + " references vertex " + std::to_string(v) +
                        " but the mesh has " + std::to_string(nv) + " vertices");
      }
    }
    std::sort(tri.begin(), tri.end());
    if (tri[0] == tri[1] || tri[1] == tri[2]) {
      throw Error(ErrorCode::MalformedInput, "triangle " + std::to_string(t) + " repeats a vertex");
    }
  }
  mesh.triangles_ = std::move(triangles);

  std::vector<Edge> edges;
  edges.reserve(3 * mesh.triangles_.size());
  for (const Triangle& tri : mesh.triangles_) {
    edges.push_back({tri[0], tri[1]});
    edges.push_back({tri[0], tri[2]});
    edges.push_back({tri[1], tri[2]});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  mesh.edges_ = std::move(edges);

  const std::size_t nt = mesh.triangles_.size();
  mesh.triangle_edges_.resize(nt);
  mesh.triangle_orientation_.resize(nt);
  mesh.edge_triangles_.assign(mesh.edges_.size(), {});
  for (std::size_t t = 0; t < nt; ++t) {
    const Triangle& tri = mesh.triangles_[t];
    mesh.triangle_edges_[t] = {mesh.find_edge(tri[0], tri[1]), mesh.find_edge(tri[0], tri[2]),
                               mesh.find_edge(tri[1], tri[2])};
    for (std::size_t e : mesh.triangle_edges_[t]) mesh.edge_triangles_[e].push_back(t);

    const Point& a = mesh.vertices_[tri[0]];
    const Point& b = mesh.vertices_[tri[1]];
    const Point& c = mesh.vertices_[tri[2]];
    const double area2 = (b - a).cross(c - a).norm();
    if (!(area2 > 0.0)) {
      throw Error(ErrorCode::MalformedInput, "triangle " + std::to_string(t) + " has zero area");
    }
    mesh.triangle_orientation_[t] = planar_cross(a, b, c) < 0.0 ? -1 : 1;
  }

  mesh.boundary_edges_.assign(mesh.edges_.size(), false);
  mesh.boundary_vertices_.assign(nv, false);
  for (std::size_t e = 0; e < mesh.edges_.size(); ++e) {
    if (mesh.edge_triangles_[e].size() == 1) {
      mesh.boundary_edges_[e] = true;
      mesh.boundary_vertices_[mesh.edges_[e][0]] = true;
      mesh.boundary_vertices_[mesh.edges_[e][1]] = true;
    }
  }
  return mesh;
}

std::size_t SimplicialMesh2D::num_simplices(int dimension) const {
  switch (dimension) {
    case 0: return num_vertices();
    case 1: return num_edges();
    case 2: return num_triangles();
    default: throw Error(ErrorCode::InvalidDegree, "simplex dimension " + std::to_string(dimension));
  }
}

std::vector<std::size_t> SimplicialMesh2D::boundary_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < boundary_vertices_.size(); ++v) {
    if (boundary_vertices_[v]) out.push_back(v);
  }
  return out;
}

std::size_t SimplicialMesh2D::find_edge(std::size_t a, std::size_t b) const {
  const Edge key = a < b ? Edge{a, b} : Edge{b, a};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

double SimplicialMesh2D::edge_length(std::size_t e) const {
  return (vertices_[edges_[e][1]] - vertices_[edges_[e][0]]).norm();
}

double SimplicialMesh2D::min_edge_length() const {
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < edges_.size(); ++e) h = std::min(h, edge_length(e));
  return h;
}

SimplicialMesh2D generate_grid(std::size_t nx, std::size_t ny, double lx, double ly) {
  if (nx == 0 || ny == 0) throw Error(ErrorCode::InvalidArgument, "grid needs nx >= 1 and ny >= 1");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw Error(ErrorCode::InvalidArgument, "grid extents must be positive and finite");
  }
  std::vector<Point> vertices;
  vertices.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      vertices.emplace_back(lx * static_cast<double>(i) / static_cast<double>(nx),
                            ly * static_cast<double>(j) / static_cast<double>(ny), 0.0);
    }
  }
  std::vector<Triangle> triangles;
  triangles.reserve(2 * nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t v00 = j * (nx + 1) + i;
      const std::size_t v10 = v00 + 1;
      const std::size_t v01 = v00 + nx + 1;
      const std::size_t v11 = v01 + 1;
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v01, v11});
    }
  }
  return SimplicialMesh2D::from_triangles(std::move(vertices), std::move(triangles));
}

}  // namespace decapode
