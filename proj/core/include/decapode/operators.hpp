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

#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "decapode/dual_mesh.hpp"
#include "decapode/form_type.hpp"
#include "decapode/mesh.hpp"

namespace decapode {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// A discrete k-form: one value per simplex (or dual cell) of one type.
struct Cochain {
  FormType type{};
  Eigen::VectorXd values;

  Cochain() = default;
  Cochain(FormType t, Eigen::VectorXd v) : type(t), values(std::move(v)) {}

  static Cochain zeros(const SimplicialMesh2D& mesh, FormType t);
  static Cochain constant(const SimplicialMesh2D& mesh, FormType t, double value);
};

/// Throws invalid-argument unless c has the length demanded by its type on
/// mesh and every entry is finite.
void check_cochain(const SimplicialMesh2D& mesh, const Cochain& c);

enum class HodgeVariant { Diagonal, Geometric };

std::string to_string(HodgeVariant variant);

/// A linear map between two form spaces.
///
/// Most operators are held as explicit sparse matrices. The inverse of the
/// non-diagonal geometric 1-form Hodge star is held as a sparse LU
/// factorization of the forward matrix instead, since its explicit inverse is
/// dense; apply() solves against it.
class OperatorMatrix {
 public:
  OperatorMatrix(FormType domain, FormType codomain, SparseMatrix matrix);

  /// Factorizes forward; throws singular-operator when it is not invertible.
  static OperatorMatrix factorized_inverse(const OperatorMatrix& forward);

  FormType domain() const { return domain_; }
  FormType codomain() const { return codomain_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

  bool is_explicit() const { return solver_ == nullptr; }
  /// The explicit matrix; throws invalid-argument for factorized operators.
  const SparseMatrix& matrix() const;
  /// Explicit matrix, or the inverse materialized column by column.
  SparseMatrix to_sparse() const;

  /// out must already have rows() entries; explicit operators do not allocate.
  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& in) const;
  /// Rejects a cochain whose type is not domain().
  Cochain apply(const Cochain& in) const;

 private:
  struct Factorization;

  FormType domain_;
  FormType codomain_;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  SparseMatrix matrix_;
  std::shared_ptr<const Factorization> solver_;
};

/// outer ∘ inner, both explicit; throws invalid-argument on a type mismatch.
OperatorMatrix compose(const OperatorMatrix& outer, const OperatorMatrix& inner);

/// d₀ (vertex-edge incidence) and d₁ (edge-triangle incidence).
OperatorMatrix exterior_derivative(const SimplicialMesh2D& mesh, int k);

/// d̃₀ = d₁ᵀ and d̃₁ = -d₀ᵀ. The sign on d̃₁ makes it the outward-flux
/// divergence, so that with positive Hodge stars ⋆₀⁻¹ d̃₁ ⋆₁ d₀ is the
/// (negative semidefinite) Laplace-Beltrami operator.
OperatorMatrix dual_derivative(const SimplicialMesh2D& mesh, int k);

/// ⋆ₖ : primal k-forms -> dual (2-k)-forms.
///
/// Diagonal: ⋆₀ = |dual cell|, ⋆₁ = |dual edge| / |edge|, ⋆₂ = 1 / |triangle|.
///
/// Geometric (k = 1 only; k = 0, 2 coincide with Diagonal): each dual edge is
/// split into its per-triangle segments s (dual vertex -> edge midpoint). The
/// dual value is the flux through s of the field reconstructed in that
/// triangle, with the segment normal n split along the edge tangent t and
/// the in-plane edge normal m:
///
///   flux_s = (n·t) α(e)/|e| + (n·m) (X·m),   X = Σ_j α(e_j) W_j(dual vertex)
///
/// where W_j are the Whitney 1-forms of the triangle and |n| = |s|. The first
/// term alone is the Diagonal star; the second vanishes when s ⟂ e (e.g.
/// equilateral or circumcentric duals). The stencil of row e is the edges of
/// the triangles incident to e. For exact forms d₀u the reconstruction is
/// the P1 gradient, so d̃₁ ⋆₁ d₀ is the cotangent stiffness matrix.
OperatorMatrix hodge_star(const SimplicialMesh2D& mesh, const DualMesh& dual, int k,
                          HodgeVariant variant = HodgeVariant::Diagonal);

/// Diagonal: reciprocal entries (singular-operator on a zero). Geometric
/// k = 1: LU factorization of the forward matrix.
OperatorMatrix inverse_hodge_star(const SimplicialMesh2D& mesh, const DualMesh& dual, int k,
                                  HodgeVariant variant = HodgeVariant::Diagonal);

/// Primal-primal wedge ∧ₖₗ for k, l ∈ {0, 1}, k + l ≤ 2 (the 0-form may be on
/// either side). ∧₁₁ uses the antisymmetrized sum over permutations of each
/// triangle's vertices weighted by the dual area fraction of the pivot
/// vertex, which is 1/3 on barycentric duals.
Cochain wedge(const SimplicialMesh2D& mesh, const DualMesh& dual, int k, int l, const Cochain& a,
              const Cochain& b);

/// Value-level ∧ₖₗ writing into a pre-sized out; checks lengths only.
void wedge_into(const SimplicialMesh2D& mesh, const DualMesh& dual, int k, int l, const Eigen::VectorXd& a,
                const Eigen::VectorXd& b, Eigen::VectorXd& out);

/// L = ⋆₀⁻¹ d̃₁ ⋆₁ d₀ as one sparse matrix.
OperatorMatrix laplacian0(const SimplicialMesh2D& mesh, const DualMesh& dual,
                          HodgeVariant variant = HodgeVariant::Diagonal);

/// Primal 1-form of a per-triangle constant vector field. The value on edge
/// e averages the incident triangles' tangential line integrals, weighted by
/// the length fraction of e's dual edge inside each triangle. A constant
/// field gives the exact line integral X·(tgt - src) on every edge.
Cochain flat_dpp(const SimplicialMesh2D& mesh, const DualMesh& dual,
                 const std::vector<Eigen::Vector2d>& field);

}  // namespace decapode
