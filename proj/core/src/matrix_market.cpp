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

#include "decapode/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "decapode/error.hpp"

namespace decapode {

void write_matrix_market(const OperatorMatrix& op, std::ostream& out) {
  const SparseMatrix m = op.to_sparse();
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << "% domain " << to_string(op.domain()) << " codomain " << to_string(op.codomain()) << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  char buffer[64];
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      std::snprintf(buffer, sizeof buffer, "%.17g", it.value());
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buffer << '\n';
    }
  }
}

void save_matrix_market(const OperatorMatrix& op, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_matrix_market(op, out);
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("%%MatrixMarket matrix coordinate real")) {
    throw Error(ErrorCode::UnsupportedFormat, "expected a real coordinate Matrix Market header");
  }
  while (std::getline(in, line) && (line.empty() || line[0] == '%')) {
  }
  std::istringstream size_line(line);
  Eigen::Index rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols >> nnz)) throw Error(ErrorCode::MalformedInput, "bad Matrix Market size line");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nnz));
  for (Eigen::Index i = 0; i < nnz; ++i) {
    Eigen::Index r = 0, c = 0;
    double v = 0.0;
    if (!(in >> r >> c >> v) || r < 1 || c < 1 || r > rows || c > cols) {
      throw Error(ErrorCode::MalformedInput, "bad Matrix Market entry " + std::to_string(i + 1));
    }
    triplets.emplace_back(static_cast<int>(r - 1), static_cast<int>(c - 1), v);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace decapode
