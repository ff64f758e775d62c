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

#include "decapode/operator_cache.hpp"

#include <mutex>

#include "decapode/error.hpp"

namespace decapode {

OperatorCache::OperatorCache(std::shared_ptr<const SimplicialMesh2D> mesh, std::shared_ptr<const DualMesh> dual)
    : mesh_(std::move(mesh)), dual_(std::move(dual)) {
  if (!mesh_ || !dual_) throw Error(ErrorCode::InvalidArgument, "operator cache needs a mesh and a dual");
}

std::shared_ptr<const OperatorMatrix> OperatorCache::get(OperatorKind kind, int k, HodgeVariant variant) const {
  // Variant only affects the stars and the Laplacian.
  if (kind == OperatorKind::ExteriorDerivative || kind == OperatorKind::DualDerivative) {
    variant = HodgeVariant::Diagonal;
  }
  const Key key{kind, k, variant};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }

  std::shared_ptr<const OperatorMatrix> built;
  switch (kind) {
    case OperatorKind::ExteriorDerivative:
      built = std::make_shared<const OperatorMatrix>(exterior_derivative(*mesh_, k));
      break;
    case OperatorKind::DualDerivative:
      built = std::make_shared<const OperatorMatrix>(dual_derivative(*mesh_, k));
      break;
    case OperatorKind::HodgeStar:
      built = std::make_shared<const OperatorMatrix>(hodge_star(*mesh_, *dual_, k, variant));
      break;
    case OperatorKind::InverseHodgeStar:
      built = std::make_shared<const OperatorMatrix>(inverse_hodge_star(*mesh_, *dual_, k, variant));
      break;
    case OperatorKind::Laplacian0:
      built = std::make_shared<const OperatorMatrix>(laplacian0(*mesh_, *dual_, variant));
      break;
  }

  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(built));
  return it->second;
}

std::size_t OperatorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace decapode
