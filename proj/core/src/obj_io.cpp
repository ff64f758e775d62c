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

#include "decapode/obj_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "decapode/error.hpp"

namespace decapode {

namespace {

std::string where(std::size_t line_no) { return "OBJ line " + std::to_string(line_no) + ": "; }

double parse_coordinate(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedInput, where(line_no) + "bad coordinate '" + token + "'");
  }
}

std::size_t parse_face_index(const std::string& token, std::size_t vertex_count, std::size_t line_no) {
  const std::string head = token.substr(0, token.find('/'));
  long long value = 0;
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc() || ptr != head.data() + head.size() || value == 0) {
    throw Error(ErrorCode::MalformedInput, where(line_no) + "bad face index '" + token + "'");
  }
  const long long resolved = value > 0 ? value - 1 : static_cast<long long>(vertex_count) + value;
  if (resolved < 0 || resolved >= static_cast<long long>(vertex_count)) {
    throw Error(ErrorCode::MalformedInput,
                where(line_no) + "face index " + std::to_string(value) + " is out of range (" +
                    std::to_string(vertex_count) + " vertices defined)");
  }
  return static_cast<std::size_t>(resolved);
}

}  // namespace

SimplicialMesh2D read_obj(std::istream& in) {
  std::vector<Point> vertices;
  std::vector<Triangle> triangles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;

    std::vector<std::string> args;
    for (std::string token; fields >> token;) args.push_back(token);

    if (tag == "v") {
      if (args.size() < 2 || args.size() > 4) {
        throw Error(ErrorCode::MalformedInput, where(line_no) + "vertex needs 2 or 3 coordinates");
      }
      // A fourth value is the optional homogeneous weight; ignored.
      const double x = parse_coordinate(args[0], line_no);
      const double y = parse_coordinate(args[1], line_no);
      const double z = args.size() >= 3 ? parse_coordinate(args[2], line_no) : 0.0;
      vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      if (args.size() != 3) {
        throw Error(ErrorCode::UnsupportedFormat,
                    where(line_no) + "face with " + std::to_string(args.size()) +
                        " vertices; only triangles are supported");
      }
      triangles.push_back({parse_face_index(args[0], vertices.size(), line_no),
                           parse_face_index(args[1], vertices.size(), line_no),
                           parse_face_index(args[2], vertices.size(), line_no)});
    }
  }
  return SimplicialMesh2D::from_triangles(std::move(vertices), std::move(triangles));
}

SimplicialMesh2D load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_obj(in);
}

void write_obj(const SimplicialMesh2D& mesh, std::ostream& out) {
  char buffer[96];
  out << "# " << mesh.num_vertices() << " vertices, " << mesh.num_triangles() << " faces\n";
  for (const Point& p : mesh.vertices()) {
    std::snprintf(buffer, sizeof buffer, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    out << buffer;
  }
  for (const Triangle& t : mesh.triangles()) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

void save_obj(const SimplicialMesh2D& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_obj(mesh, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace decapode
