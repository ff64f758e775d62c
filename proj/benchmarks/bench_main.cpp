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

#include <memory>
#include <string>

#include <benchmark/benchmark.h>

#include "decapode/dual_mesh.hpp"
#include "decapode/operator_cache.hpp"
#include "decapode/parser.hpp"
#include "decapode/program.hpp"
#include "decapode/schedule.hpp"
#include "decapode/solver.hpp"

namespace {

using namespace decapode;

constexpr const char* kDiffusion = R"(C :: Form0
param k
ϕ == ⋆₁(k(d₀(C)))
∂ₜ(C) == ⋆₀⁻¹(d̃₁(ϕ))
)";

std::shared_ptr<const SimplicialMesh2D> grid(std::size_t n) {
  return std::make_shared<const SimplicialMesh2D>(generate_grid(n, n, 1.0, 1.0));
}

void BM_BuildDual(benchmark::State& state) {
  const auto mesh = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_dual(*mesh));
}
BENCHMARK(BM_BuildDual)->Arg(32)->Arg(128);

void BM_GeometricHodge1(benchmark::State& state) {
  const auto mesh = grid(static_cast<std::size_t>(state.range(0)));
  const DualMesh dual = build_dual(*mesh);
  for (auto _ : state) benchmark::DoNotOptimize(hodge_star(*mesh, dual, 1, HodgeVariant::Geometric));
}
BENCHMARK(BM_GeometricHodge1)->Arg(32)->Arg(128);

void BM_Laplacian(benchmark::State& state) {
  const auto mesh = grid(static_cast<std::size_t>(state.range(0)));
  const DualMesh dual = build_dual(*mesh);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian0(*mesh, dual));
}
BENCHMARK(BM_Laplacian)->Arg(32)->Arg(128);

void BM_Schedule(benchmark::State& state) {
  const Decapode d = parse_decapode(kDiffusion);
  for (auto _ : state) benchmark::DoNotOptimize(schedule(d, {"C"}));
}
BENCHMARK(BM_Schedule);

void BM_Rk4Step(benchmark::State& state) {
  const auto mesh = grid(static_cast<std::size_t>(state.range(0)));
  const auto cache = std::make_shared<const OperatorCache>(mesh, std::make_shared<const DualMesh>(build_dual(*mesh)));
  const ExecutableProgram p = decapode::bind(schedule(parse_decapode(kDiffusion), {"C"}),
                                             standard_registry(cache, HodgeVariant::Geometric), *mesh,
                                             {{"k", Eigen::VectorXd::Constant(1, 1.0)}});
  SimState init = make_state(p, *mesh);
  init.fields[0].values.setRandom();
  const double dt = diffusion_cfl_dt(*mesh, 1.0);
  const SolverConfig cfg{Method::RK4, dt, dt, 1};
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p, init, cfg));
}
BENCHMARK(BM_Rk4Step)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
