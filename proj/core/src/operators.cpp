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

#include "decapode/operators.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "decapode/error.hpp"

namespace decapode {

using Triplet = Eigen::Triplet<double>;
using ColMajorSparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;

struct OperatorMatrix::Factorization {
  Eigen::SparseLU<ColMajorSparse, Eigen::COLAMDOrdering<int>> lu;
};

namespace {

void require_degree(int k, int max_degree, const char* what) {
  if (k < 0 || k > max_degree) {
    throw Error(ErrorCode::InvalidDegree,
                std::string(what) + " is defined for k in {0.." + std::to_string(max_degree) +
                    "}, got " + std::to_string(k));
  }
}

SparseMatrix diagonal(const std::vector<double>& entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  SparseMatrix m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) m.insert(i, i) = entries[static_cast<std::size_t>(i)];
  m.makeCompressed();
  return m;
}

Eigen::Index dim(const SimplicialMesh2D& mesh, FormType t) {
  return static_cast<Eigen::Index>(mesh.form_size(t));
}

// Gradients of the barycentric coordinates of triangle t, in its own plane.
std::array<Eigen::Vector3d, 3> barycentric_gradients(const Point& x0, const Point& x1, const Point& x2) {
  const Eigen::Vector3d e1 = x1 - x0;
  const Eigen::Vector3d e2 = x2 - x0;
  Eigen::Matrix2d gram;
  gram << e1.dot(e1), e1.dot(e2), e1.dot(e2), e2.dot(e2);
  const Eigen::Matrix2d inv = gram.inverse();
  const Eigen::Vector3d g1 = inv(0, 0) * e1 + inv(0, 1) * e2;
  const Eigen::Vector3d g2 = inv(1, 0) * e1 + inv(1, 1) * e2;
  return {-g1 - g2, g1, g2};
}

// Barycentric coordinates of p with respect to (x0, x1, x2).
Eigen::Vector3d barycentric_coordinates(const std::array<Eigen::Vector3d, 3>& grads, const Point& x0,
                                        const Point& p) {
  const double l1 = grads[1].dot(p - x0);
  const double l2 = grads[2].dot(p - x0);
  return {1.0 - l1 - l2, l1, l2};
}

constexpr std::array<std::array<int, 2>, 3> kLocalEdges{{{0, 1}, {0, 2}, {1, 2}}};

SparseMatrix geometric_star1(const SimplicialMesh2D& mesh, const DualMesh& dual) {
  const auto& verts = mesh.vertices();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_triangles() * 12);

  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    const std::array<Point, 3> x{verts[tri[0]], verts[tri[1]], verts[tri[2]]};
    const auto grads = barycentric_gradients(x[0], x[1], x[2]);
    const Point& center = dual.dual_vertex_positions[t];
    const Eigen::Vector3d lambda = barycentric_coordinates(grads, x[0], center);
    const Eigen::Vector3d normal = (x[1] - x[0]).cross(x[2] - x[0]).normalized();

    // Whitney 1-forms evaluated at the dual vertex.
    std::array<Eigen::Vector3d, 3> whitney;
    for (int j = 0; j < 3; ++j) {
      const auto [a, b] = kLocalEdges[j];
      whitney[j] = lambda[a] * grads[b] - lambda[b] * grads[a];
    }

    const auto& te = mesh.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const std::size_t e = te[i];
      const auto [a, b] = kLocalEdges[i];
      const Eigen::Vector3d edge = x[b] - x[a];
      const double length = edge.norm();
      const Eigen::Vector3d tangent = edge / length;
      const Eigen::Vector3d edge_normal = normal.cross(tangent);

      Eigen::Vector3d seg_normal = normal.cross(dual.dual_segments[t][i]);
      if (seg_normal.dot(tangent) < 0.0) seg_normal = -seg_normal;
      const double along = seg_normal.dot(tangent);
      const double across = seg_normal.dot(edge_normal);

      const auto row = static_cast<int>(e);
      triplets.emplace_back(row, row, along / length);
      if (across != 0.0) {
        for (int j = 0; j < 3; ++j) {
          const double w = across * whitney[j].dot(edge_normal);
          if (w != 0.0) triplets.emplace_back(row, static_cast<int>(te[j]), w);
        }
      }
    }
  }
  const auto ne = static_cast<Eigen::Index>(mesh.num_edges());
  SparseMatrix m(ne, ne);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(0.0);
  m.makeCompressed();
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cochain

Cochain Cochain::zeros(const SimplicialMesh2D& mesh, FormType t) {
  return {t, Eigen::VectorXd::Zero(dim(mesh, t))};
}

Cochain Cochain::constant(const SimplicialMesh2D& mesh, FormType t, double value) {
  return {t, Eigen::VectorXd::Constant(dim(mesh, t), value)};
}

void check_cochain(const SimplicialMesh2D& mesh, const Cochain& c) {
  if (c.values.size() != dim(mesh, c.type)) {
    throw Error(ErrorCode::InvalidArgument,
                to_string(c.type) + " cochain has " + std::to_string(c.values.size()) +
                    " values, mesh needs " + std::to_string(dim(mesh, c.type)));
  }
  if (!c.values.allFinite()) throw Error(ErrorCode::InvalidArgument, "cochain has non-finite values");
}

std::string to_string(HodgeVariant variant) {
  return variant == HodgeVariant::Diagonal ? "diagonal" : "geometric";
}

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(FormType domain, FormType codomain, SparseMatrix matrix)
    : domain_(domain),
      codomain_(codomain),
      rows_(matrix.rows()),
      cols_(matrix.cols()),
      matrix_(std::move(matrix)) {}

OperatorMatrix OperatorMatrix::factorized_inverse(const OperatorMatrix& forward) {
  if (forward.rows() != forward.cols()) {
    throw Error(ErrorCode::SingularOperator, "cannot invert a non-square operator");
  }
  auto factorization = std::make_shared<Factorization>();
  factorization->lu.compute(ColMajorSparse(forward.matrix()));
  if (factorization->lu.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularOperator,
                "LU factorization of " + to_string(forward.domain()) + " -> " +
                    to_string(forward.codomain()) + " operator failed: " +
                    factorization->lu.lastErrorMessage());
  }
  OperatorMatrix inverse(forward.codomain(), forward.domain(), SparseMatrix(forward.cols(), forward.rows()));
  inverse.solver_ = std::move(factorization);
  return inverse;
}

const SparseMatrix& OperatorMatrix::matrix() const {
  if (!is_explicit()) {
    throw Error(ErrorCode::InvalidArgument, "factorized operator has no explicit matrix; use to_sparse()");
  }
  return matrix_;
}

SparseMatrix OperatorMatrix::to_sparse() const {
  if (is_explicit()) return matrix_;
  std::vector<Triplet> triplets;
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(cols_);
  Eigen::VectorXd column(rows_);
  for (Eigen::Index j = 0; j < cols_; ++j) {
    unit[j] = 1.0;
    apply(unit, column);
    unit[j] = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (column[i] != 0.0) triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), column[i]);
    }
  }
  SparseMatrix m(rows_, cols_);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

void OperatorMatrix::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  if (in.size() != cols_ || out.size() != rows_) {
    throw Error(ErrorCode::InvalidArgument,
                "operator of shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                    " applied to vector of length " + std::to_string(in.size()));
  }
  if (solver_) {
    out = solver_->lu.solve(in);
  } else {
    out.noalias() = matrix_ * in;
  }
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& in) const {
  Eigen::VectorXd out(rows_);
  apply(in, out);
  return out;
}

Cochain OperatorMatrix::apply(const Cochain& in) const {
  if (in.type != domain_) {
    throw Error(ErrorCode::InvalidArgument, "operator expects a " + to_string(domain_) + ", got a " +
                                                to_string(in.type));
  }
  return {codomain_, apply(in.values)};
}

OperatorMatrix compose(const OperatorMatrix& outer, const OperatorMatrix& inner) {
  if (inner.codomain() != outer.domain()) {
    throw Error(ErrorCode::InvalidArgument, "cannot compose " + to_string(outer.domain()) + " -> " +
                                                to_string(outer.codomain()) + " after " +
                                                to_string(inner.domain()) + " -> " +
                                                to_string(inner.codomain()));
  }
  SparseMatrix product = outer.matrix() * inner.matrix();
  return {inner.domain(), outer.codomain(), std::move(product)};
}

// ---------------------------------------------------------------------------
// Derivatives

OperatorMatrix exterior_derivative(const SimplicialMesh2D& mesh, int k) {
  require_degree(k, 1, "exterior derivative");
  std::vector<Triplet> triplets;
  if (k == 0) {
    SparseMatrix d(static_cast<Eigen::Index>(mesh.num_edges()), static_cast<Eigen::Index>(mesh.num_vertices()));
    triplets.reserve(2 * mesh.num_edges());
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
      triplets.emplace_back(static_cast<int>(e), static_cast<int>(mesh.edges()[e][0]), -1.0);
      triplets.emplace_back(static_cast<int>(e), static_cast<int>(mesh.edges()[e][1]), 1.0);
    }
    d.setFromTriplets(triplets.begin(), triplets.end());
    return {FormType::primal(0), FormType::primal(1), std::move(d)};
  }
  // ∂[v0,v1,v2] = [v1,v2] - [v0,v2] + [v0,v1]
  constexpr std::array<double, 3> kSigns{1.0, -1.0, 1.0};
  SparseMatrix d(static_cast<Eigen::Index>(mesh.num_triangles()), static_cast<Eigen::Index>(mesh.num_edges()));
  triplets.reserve(3 * mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& te = mesh.triangle_edges(t);
    for (int i = 0; i < 3; ++i) triplets.emplace_back(static_cast<int>(t), static_cast<int>(te[i]), kSigns[i]);
  }
  d.setFromTriplets(triplets.begin(), triplets.end());
  return {FormType::primal(1), FormType::primal(2), std::move(d)};
}

OperatorMatrix dual_derivative(const SimplicialMesh2D& mesh, int k) {
  require_degree(k, 1, "dual derivative");
  const OperatorMatrix primal = exterior_derivative(mesh, 1 - k);
  SparseMatrix transposed = primal.matrix().transpose();
  if (k == 1) transposed = -transposed;
  return {FormType::dual(k), FormType::dual(k + 1), std::move(transposed)};
}

// ---------------------------------------------------------------------------
// Hodge stars

OperatorMatrix hodge_star(const SimplicialMesh2D& mesh, const DualMesh& dual, int k, HodgeVariant variant) {
  require_degree(k, 2, "hodge star");
  if (variant != HodgeVariant::Diagonal && variant != HodgeVariant::Geometric) {
    throw Error(ErrorCode::InvalidArgument, "unknown hodge star variant");
  }
  if (dual.dual_cell_areas.size() != mesh.num_vertices() || dual.triangle_areas.size() != mesh.num_triangles()) {
    throw Error(ErrorCode::InvalidArgument, "dual mesh does not belong to this mesh");
  }
  const FormType domain = FormType::primal(k);
  const FormType codomain = FormType::dual(2 - k);
  switch (k) {
    case 0: return {domain, codomain, diagonal(dual.dual_cell_areas)};
    case 1: {
      if (variant == HodgeVariant::Geometric) return {domain, codomain, geometric_star1(mesh, dual)};
      std::vector<double> ratio(mesh.num_edges());
      for (std::size_t e = 0; e < ratio.size(); ++e) {
        ratio[e] = dual.dual_edge_lengths[e] / dual.primal_edge_lengths[e];
      }
      return {domain, codomain, diagonal(ratio)};
    }
    default: {
      std::vector<double> inv_area(mesh.num_triangles());
      for (std::size_t t = 0; t < inv_area.size(); ++t) inv_area[t] = 1.0 / dual.triangle_areas[t];
      return {domain, codomain, diagonal(inv_area)};
    }
  }
}

OperatorMatrix inverse_hodge_star(const SimplicialMesh2D& mesh, const DualMesh& dual, int k,
                                  HodgeVariant variant) {
  const OperatorMatrix forward = hodge_star(mesh, dual, k, variant);
  if (variant == HodgeVariant::Geometric && k == 1) return OperatorMatrix::factorized_inverse(forward);

  const SparseMatrix& m = forward.matrix();
  std::vector<double> reciprocal(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double v = m.coeff(i, i);
    if (v == 0.0 || !std::isfinite(v)) {
      throw Error(ErrorCode::SingularOperator,
                  "hodge star " + std::to_string(k) + " has zero entry at index " + std::to_string(i));
    }
    reciprocal[static_cast<std::size_t>(i)] = 1.0 / v;
  }
  return {forward.codomain(), forward.domain(), diagonal(reciprocal)};
}

// ---------------------------------------------------------------------------
// Wedge products

namespace {

void check_wedge_degrees(int k, int l) {
  if (k < 0 || l < 0 || k > 1 || l > 1 || k + l > 2) {
    throw Error(ErrorCode::InvalidDegree,
                "wedge of degrees " + std::to_string(k) + " and " + std::to_string(l) + " is not supported");
  }
}

}  // namespace

void wedge_into(const SimplicialMesh2D& mesh, const DualMesh& dual, int k, int l, const Eigen::VectorXd& a,
                const Eigen::VectorXd& b, Eigen::VectorXd& out) {
  check_wedge_degrees(k, l);
  const auto size_of = [&](int degree) {
    return static_cast<Eigen::Index>(mesh.form_size(FormType::primal(degree)));
  };
  if (a.size() != size_of(k) || b.size() != size_of(l) || out.size() != size_of(k + l)) {
    throw Error(ErrorCode::InvalidArgument, "wedge operand length does not match the mesh");
  }

  if (k == 0 && l == 0) {
    out = a.cwiseProduct(b);
    return;
  }

  if (k + l == 1) {
    const Eigen::VectorXd& zero_form = k == 0 ? a : b;
    const Eigen::VectorXd& one_form = k == 0 ? b : a;
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
      const auto ei = static_cast<Eigen::Index>(e);
      const double avg = 0.5 * (zero_form[static_cast<Eigen::Index>(mesh.edges()[e][0])] +
                                zero_form[static_cast<Eigen::Index>(mesh.edges()[e][1])]);
      out[ei] = avg * one_form[ei];
    }
    return;
  }

  // ∧₁₁: (1/2!) Σ_τ sign(τ) w(τ1) α[τ0 τ1] β[τ1 τ2] over permutations τ of the
  // triangle's vertices, with w the pivot vertex's share of the triangle area.
  constexpr std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  constexpr std::array<double, 6> kPermSigns{1, 1, 1, -1, -1, -1};
  const auto& verts = mesh.vertices();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& te = mesh.triangle_edges(t);
    const Triangle& tri = mesh.triangles()[t];
    // oriented value of local edge (i, j), i != j
    const auto value = [&](const Eigen::VectorXd& form, int i, int j) {
      const int lo = std::min(i, j);
      const int hi = std::max(i, j);
      const int local = lo == 0 ? (hi == 1 ? 0 : 1) : 2;
      const double v = form[static_cast<Eigen::Index>(te[static_cast<std::size_t>(local)])];
      return i < j ? v : -v;
    };
    std::array<double, 3> share{};
    const Point& center = dual.dual_vertex_positions[t];
    const std::array<std::size_t, 3> e_of_vertex_first{te[0], te[0], te[1]};
    const std::array<std::size_t, 3> e_of_vertex_second{te[1], te[2], te[2]};
    for (int v = 0; v < 3; ++v) {
      const Point& p = verts[tri[static_cast<std::size_t>(v)]];
      const Point& m1 = dual.edge_midpoints[e_of_vertex_first[static_cast<std::size_t>(v)]];
      const Point& m2 = dual.edge_midpoints[e_of_vertex_second[static_cast<std::size_t>(v)]];
      share[static_cast<std::size_t>(v)] =
          0.5 * ((m1 - p).cross(center - p).norm() + (center - p).cross(m2 - p).norm()) /
          dual.triangle_areas[t];
    }
    double sum = 0.0;
    for (std::size_t p = 0; p < kPerms.size(); ++p) {
      const auto& tau = kPerms[p];
      sum += kPermSigns[p] * share[static_cast<std::size_t>(tau[1])] * value(a, tau[0], tau[1]) *
             value(b, tau[1], tau[2]);
    }
    out[static_cast<Eigen::Index>(t)] = 0.5 * sum;
  }
}

Cochain wedge(const SimplicialMesh2D& mesh, const DualMesh& dual, int k, int l, const Cochain& a,
              const Cochain& b) {
  check_wedge_degrees(k, l);
  if (a.type != FormType::primal(k) || b.type != FormType::primal(l)) {
    throw Error(ErrorCode::InvalidDegree, "wedge " + std::to_string(k) + std::to_string(l) + " expects Form" +
                                              std::to_string(k) + " and Form" + std::to_string(l) +
                                              ", got " + to_string(a.type) + " and " + to_string(b.type));
  }
  check_cochain(mesh, a);
  check_cochain(mesh, b);
  Cochain out = Cochain::zeros(mesh, FormType::primal(k + l));
  wedge_into(mesh, dual, k, l, a.values, b.values, out.values);
  return out;
}

// ---------------------------------------------------------------------------
// Composites

OperatorMatrix laplacian0(const SimplicialMesh2D& mesh, const DualMesh& dual, HodgeVariant variant) {
  const OperatorMatrix d0 = exterior_derivative(mesh, 0);
  const OperatorMatrix star1 = hodge_star(mesh, dual, 1, variant);
  const OperatorMatrix dual_d1 = dual_derivative(mesh, 1);
  const OperatorMatrix inv_star0 = inverse_hodge_star(mesh, dual, 0, variant);
  return compose(inv_star0, compose(dual_d1, compose(star1, d0)));
}

Cochain flat_dpp(const SimplicialMesh2D& mesh, const DualMesh& dual, const std::vector<Eigen::Vector2d>& field) {
  if (field.size() != mesh.num_triangles()) {
    throw Error(ErrorCode::InvalidArgument, "flat needs one vector per triangle: got " +
                                                std::to_string(field.size()) + ", mesh has " +
                                                std::to_string(mesh.num_triangles()));
  }
  const auto& verts = mesh.vertices();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_edges()));
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Vector3d x(field[t].x(), field[t].y(), 0.0);
    const auto& te = mesh.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const std::size_t e = te[static_cast<std::size_t>(i)];
      const double total = dual.dual_edge_lengths[e];
      const double fraction = dual.dual_segments[t][static_cast<std::size_t>(i)].norm() / total;
      const Eigen::Vector3d edge = verts[mesh.edges()[e][1]] - verts[mesh.edges()[e][0]];
      out[static_cast<Eigen::Index>(e)] += fraction * x.dot(edge);
    }
  }
  return {FormType::primal(1), std::move(out)};
}

}  // namespace decapode
