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

#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>

#include "decapode/operators.hpp"

namespace decapode {

enum class OperatorKind { ExteriorDerivative, DualDerivative, HodgeStar, InverseHodgeStar, Laplacian0 };

/// Builds each operator of one (mesh, dual) pair at most once.
///
/// Lookups take a shared lock; a miss builds the operator without holding
/// any lock and inserts under an exclusive lock, keeping the first insert if
/// two threads raced.
class OperatorCache {
 public:
  OperatorCache(std::shared_ptr<const SimplicialMesh2D> mesh, std::shared_ptr<const DualMesh> dual);

  std::shared_ptr<const OperatorMatrix> get(OperatorKind kind, int k,
                                            HodgeVariant variant = HodgeVariant::Diagonal) const;

  const SimplicialMesh2D& mesh() const { return *mesh_; }
  const DualMesh& dual() const { return *dual_; }
  std::shared_ptr<const SimplicialMesh2D> mesh_ptr() const { return mesh_; }
  std::shared_ptr<const DualMesh> dual_ptr() const { return dual_; }

  std::size_t size() const;

 private:
  using Key = std::tuple<OperatorKind, int, HodgeVariant>;

  std::shared_ptr<const SimplicialMesh2D> mesh_;
  std::shared_ptr<const DualMesh> dual_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, std::shared_ptr<const OperatorMatrix>> entries_;
};

}  // namespace decapode
