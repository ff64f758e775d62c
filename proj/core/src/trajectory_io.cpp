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

#include "decapode/trajectory_io.hpp"

#include <cstdio>
#include <fstream>

#include "decapode/error.hpp"

namespace decapode {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "time,var,index,value\n";
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const SimState& state = traj.snapshots[s];
    const std::string time = number(traj.times[s]);
    for (std::size_t f = 0; f < state.fields.size(); ++f) {
      const Eigen::VectorXd& v = state.fields[f].values;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        out << time << ',' << state.names[f] << ',' << i << ',' << number(v[i]) << '\n';
      }
    }
  }
}

void save_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out = open_output(path);
  write_trajectory_csv(out, traj);
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

void write_vtk(std::ostream& out, const SimplicialMesh2D& mesh, const SimState& state) {
  out << "# vtk DataFile Version 3.0\n";
  out << "decapode t=" << number(state.time) << "\n";
  out << "ASCII\nDATASET POLYDATA\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Point& p : mesh.vertices()) out << number(p.x()) << ' ' << number(p.y()) << ' ' << number(p.z()) << '\n';
  out << "POLYGONS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';

  auto section = [&](int dimension, const char* header, std::size_t count) {
    bool first = true;
    for (std::size_t f = 0; f < state.fields.size(); ++f) {
      if (state.fields[f].type.simplex_dimension() != dimension) continue;
      if (first) out << header << ' ' << count << '\n';
      first = false;
      out << "SCALARS " << state.names[f] << " double 1\nLOOKUP_TABLE default\n";
      const Eigen::VectorXd& v = state.fields[f].values;
      for (Eigen::Index i = 0; i < v.size(); ++i) out << number(v[i]) << '\n';
    }
  };
  section(0, "POINT_DATA", mesh.num_vertices());
  section(2, "CELL_DATA", mesh.num_triangles());
}

std::vector<std::string> save_vtk_series(const std::string& prefix, const SimplicialMesh2D& mesh,
                                         const Trajectory& traj) {
  std::vector<std::string> paths;
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%04zu.vtk", s);
    const std::string path = prefix + suffix;
    std::ofstream out = open_output(path);
    write_vtk(out, mesh, traj.snapshots[s]);
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
    paths.push_back(path);
  }
  return paths;
}

}  // namespace decapode
