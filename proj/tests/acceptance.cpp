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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check also enforces its wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "decapode/compose.hpp"
#include "decapode/decapode_json.hpp"
#include "decapode/dual_mesh.hpp"
#include "decapode/error.hpp"
#include "decapode/obj_io.hpp"
#include "decapode/operator_cache.hpp"
#include "decapode/parser.hpp"
#include "decapode/program.hpp"
#include "decapode/schedule.hpp"
#include "decapode/solver.hpp"
#include "decapode/validate.hpp"
#include "test_support.hpp"

namespace {

using namespace decapode;
using Eigen::VectorXd;
using testing::data_path;
using testing::model_text;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Env {
  std::shared_ptr<const SimplicialMesh2D> mesh;
  std::shared_ptr<const OperatorCache> cache;

  explicit Env(SimplicialMesh2D m) : mesh(std::make_shared<const SimplicialMesh2D>(std::move(m))) {
    cache = std::make_shared<const OperatorCache>(mesh, std::make_shared<const DualMesh>(build_dual(*mesh)));
  }

  ExecutableProgram compile(const Decapode& d, const std::vector<std::string>& states,
                            const std::vector<BoundaryMask>& masks = {}, const ParameterValues& params = {}) const {
    const Schedule s = attach_masks(schedule(d, states), masks, mesh.get());
    return decapode::bind(s, standard_registry(cache, HodgeVariant::Geometric), *mesh, params);
  }
};

const ParameterValues kUnitDiffusivity{{"k", VectorXd::Constant(1, 1.0)}};

bool all_zero(const SparseMatrix& m) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      if (it.value() != 0.0) return false;
  return true;
}

Outcome exactness() {
  std::vector<SimplicialMesh2D> meshes;
  for (std::size_t n = 1; n <= 8; ++n) meshes.push_back(generate_grid(n, n, 1.0, 1.0));
  meshes.push_back(load_obj(data_path("irregular.obj")));
  for (const auto& m : meshes) {
    const SparseMatrix dd = exterior_derivative(m, 1).matrix() * exterior_derivative(m, 0).matrix();
    const SparseMatrix tt = dual_derivative(m, 1).matrix() * dual_derivative(m, 0).matrix();
    if (!all_zero(dd) || !all_zero(tt)) return {false, "nonzero entry on a mesh with " + std::to_string(m.num_vertices()) + " vertices"};
  }
  return {true, std::to_string(meshes.size()) + " meshes, every entry exactly 0"};
}

Outcome dual_partition() {
  std::vector<SimplicialMesh2D> meshes{testing::right_triangle(), load_obj(data_path("irregular.obj")),
                                       load_obj(data_path("equilateral.obj")), generate_grid(64, 64, 1.0, 1.0),
                                       generate_grid(5, 3, 2.0, 0.5)};
  for (std::size_t n = 1; n <= 8; ++n) meshes.push_back(generate_grid(n, n, 1.0, 1.0));
  double worst = 0;
  for (const auto& m : meshes) {
    const DualMesh d = build_dual(m, Subdivision::Barycentric);
    worst = std::max(worst, std::abs(d.total_dual_area() - d.total_area()) / d.total_area());
  }
  return {worst <= 1e-12, "worst relative gap " + fmt("%.2e", worst) + " over " + std::to_string(meshes.size()) + " meshes"};
}

double eigen_error(std::size_t n) {
  const Env env(generate_grid(n, n, 1.0, 1.0));
  const auto L = env.cache->get(OperatorKind::Laplacian0, 0, HodgeVariant::Geometric);
  const VectorXd u = testing::sin_sin(*env.mesh);
  const VectorXd Lu = L->apply(u);
  double num = 0, den = 0;
  for (std::size_t v = 0; v < env.mesh->num_vertices(); ++v) {
    if (env.mesh->boundary_vertex_flags()[v]) continue;
    const auto i = static_cast<Eigen::Index>(v);
    const double expect = -2 * M_PI * M_PI * u[i];
    num += (Lu[i] - expect) * (Lu[i] - expect);
    den += expect * expect;
  }
  return std::sqrt(num / den);
}

Outcome laplacian_eigenfunction() {
  const double e16 = eigen_error(16), e32 = eigen_error(32), e64 = eigen_error(64);
  const bool ok = e64 <= 0.10 && e32 < e16 && e64 < e32;
  return {ok, "errors n=16 " + fmt("%.3e", e16) + ", n=32 " + fmt("%.3e", e32) + ", n=64 " + fmt("%.3e", e64)};
}

Outcome heat_benchmark() {
  const Env env(generate_grid(64, 64, 1.0, 1.0));
  const Decapode d = parse_decapode(model_text("diffusion.dec"));
  const BoundaryMask dirichlet{tangent_name("C"), boundary_indices(*env.mesh, FormType::primal(0)), MaskMode::SetZero, {}};
  const ExecutableProgram p = env.compile(d, {"C"}, {dirichlet}, kUnitDiffusivity);
  SimState init = make_state(p, *env.mesh);
  init.fields[0].values = testing::sin_sin(*env.mesh);
  const double t_end = 0.05;
  const SolverConfig cfg{Method::RK4, diffusion_cfl_dt(*env.mesh, 1.0, 0.2), t_end, 1u << 30};
  const Trajectory traj = integrate(p, init, cfg);
  const VectorXd expect = std::exp(-2 * M_PI * M_PI * t_end) * init.fields[0].values;
  const double err = (traj.snapshots.back().fields[0].values - expect).norm() / expect.norm();
  return {err <= 0.05, "relative L2 error " + fmt("%.3e", err) + " at t = 0.05, dt = " + fmt("%.3e", cfg.dt)};
}

Outcome conservation() {
  const Env env(generate_grid(32, 32, 1.0, 1.0));
  const Decapode d = parse_decapode(model_text("diffusion.dec"));
  const ExecutableProgram p = env.compile(d, {"C"}, {}, {{"k", VectorXd::Constant(1, 0.5)}});
  SimState init = make_state(p, *env.mesh);
  for (std::size_t v = 0; v < env.mesh->num_vertices(); ++v) {
    const Point& x = env.mesh->vertices()[v];
    init.fields[0].values[static_cast<Eigen::Index>(v)] =
        std::exp(-((x.x() - 0.3) * (x.x() - 0.3) + (x.y() - 0.6) * (x.y() - 0.6)) / 0.02);
  }
  const double dt = diffusion_cfl_dt(*env.mesh, 0.5);
  const Trajectory traj = integrate(p, init, SolverConfig{Method::RK4, dt, 1000 * dt, 1000});
  const auto star0 = env.cache->get(OperatorKind::HodgeStar, 0);
  const double before = total_quantity(traj.snapshots.front(), "C", *star0);
  const double after = total_quantity(traj.snapshots.back(), "C", *star0);
  const double drift = std::abs(after - before) / std::abs(before);
  const double spread = (traj.snapshots.back().fields[0].values - init.fields[0].values).lpNorm<Eigen::Infinity>();
  return {drift <= 1e-8 && spread > 1e-3 && traj.times.size() == 2,
          "relative drift " + fmt("%.2e", drift) + " over 1000 steps, max change " + fmt("%.3f", spread)};
}

Outcome compilability_pair() {
  const Decapode explicit_form = parse_decapode(model_text("diffusion.dec"));
  const Schedule s = schedule(explicit_form, {"C"});
  std::vector<std::string> ops;
  for (const Call& c : s.calls) ops.push_back(c.op);
  const bool chain = ops == std::vector<std::string>{"d₀", "k", "⋆₁", "d̃₁", "⋆₀⁻¹"} &&
                     s.calls.back().output == tangent_name("C") && validate(explicit_form, {"C"}).empty();

  const Decapode implicit_form = parse_decapode(model_text("diffusion_implicit.dec"));
  const ValidationReport r = validate(implicit_form, {"C"});
  bool rejected = false;
  try {
    schedule(implicit_form, {"C"});
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotCompilable;
  }
  const bool ok = chain && rejected && r.has(3, "ϕ");
  return {ok, std::string("explicit: ") + (chain ? "5-call chain" : "wrong schedule") +
                  "; implicit: " + (rejected && r.has(3, "ϕ") ? "rejected, rule 3 on ϕ" : "not rejected as expected")};
}

Decapode expected_composite() {
  Decapode e;
  const VarId T = e.add_var("T", VarType::of(FormType::primal(0)));
  const VarId phi1 = e.add_var("ϕ₁");
  const VarId phi2 = e.add_var("ϕ₂");
  const VarId phi = e.add_var("ϕ", VarType::of(FormType::dual(1)));
  const VarId u = e.add_var("u", VarType::literal(), true);
  const VarId Tdot = e.add_var(tangent_name("T"), VarType::of(FormType::primal(0)));
  e.add_tvar(Tdot);
  e.add_op1(T, phi1, "k∇");
  e.add_op2(T, u, phi2, "∧");
  e.add_op1(T, Tdot, std::string(kTimeDerivative));
  e.add_op1(phi, Tdot, "∇·");
  e.add_sum(phi, {phi1, phi2});
  return e;
}

Outcome composition() {
  const UwdPattern pattern = uwd_from_json(model_text("advection_diffusion/pattern.json"));
  std::vector<OpenDecapode> parts;
  for (const char* f : {"fick.dec", "advection.dec", "conservation.dec", "superposition.dec"})
    parts.push_back(load_component(model_text(std::string("advection_diffusion/") + f)));
  const Decapode composite = oapply(pattern, parts);
  const bool iso = isomorphic(composite, expected_composite(), true);
  std::size_t dt_rows = 0;
  for (const Op1& r : composite.op1s()) dt_rows += r.op1 == kTimeDerivative;
  const bool ok = iso && dt_rows == 1 && composite.sigmas().size() == 1 && composite.vars().size() == 6;
  if (!ok) std::fputs(print_decapode(composite).c_str(), stderr);
  return {ok, std::to_string(composite.vars().size()) + " vars, " + std::to_string(dt_rows) + " ∂ₜ, " +
                  (iso ? "isomorphic to the expected composite" : "NOT isomorphic to the expected composite")};
}

Outcome scheduler_properties() {
  std::mt19937 rng(20240501);
  std::size_t compiled = 0, rejected = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = testing::random_model(rng);
    const ValidationReport report = validate(m.decapode, m.states);
    std::optional<Schedule> s;
    try {
      s = schedule(m.decapode, m.states);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCompilable && e.code() != ErrorCode::CyclicDependency) throw;
    }
    if (report.empty() != s.has_value())
      return {false, "trial " + std::to_string(trial) + ": validate/schedule disagree\n" + report.to_string()};
    if (!s) {
      ++rejected;
      continue;
    }
    ++compiled;
    if (const std::string why = testing::soundness_failure(*s); !why.empty())
      return {false, "trial " + std::to_string(trial) + ": unsound, " + why};
    if (testing::call_tuples(*s) != testing::row_tuples(m.decapode))
      return {false, "trial " + std::to_string(trial) + ": incomplete schedule"};
    const Decapode copy = decapode_from_json(decapode_to_json(m.decapode)).decapode;
    const std::string a = schedule_to_json(*s);
    if (schedule_to_json(schedule(copy, m.states)) != a || schedule_to_json(schedule(m.decapode, m.states)) != a)
      return {false, "trial " + std::to_string(trial) + ": nondeterministic schedule"};
  }
  return {compiled > 0 && rejected > 0,
          "500 models: " + std::to_string(compiled) + " compiled, " + std::to_string(rejected) + " rejected"};
}

Outcome program_matrix_equivalence() {
  std::mt19937 rng(77);
  double worst = 0;
  std::size_t checks = 0;
  for (const auto& mesh : {generate_grid(16, 16, 1.0, 1.0), load_obj(data_path("irregular.obj"))}) {
    const Env env(mesh);
    auto op = [&](OperatorKind kind, int k) { return *env.cache->get(kind, k, HodgeVariant::Geometric); };
    const OperatorMatrix d0 = op(OperatorKind::ExteriorDerivative, 0);
    const OperatorMatrix star1 = op(OperatorKind::HodgeStar, 1);
    const OperatorMatrix dd1 = op(OperatorKind::DualDerivative, 1);
    const OperatorMatrix inv0 = op(OperatorKind::InverseHodgeStar, 0);
    const double k = 0.7;
    const OperatorMatrix kI(FormType::primal(1), FormType::primal(1),
                            k * SparseMatrix(Eigen::VectorXd::Ones(d0.rows()).asDiagonal()));
    struct Case {
      std::string source;
      std::string state;
      OperatorMatrix matrix;
    };
    const OperatorMatrix diffusion = compose(inv0, compose(dd1, compose(star1, compose(kI, d0))));
    const OperatorMatrix lap = compose(inv0, compose(dd1, compose(star1, d0)));
    const OperatorMatrix one_form = compose(d0, compose(inv0, compose(dd1, star1)));
    const std::vector<Case> cases{
        {model_text("diffusion.dec"), "C", diffusion},
        {"C :: Form0\n∂ₜ(C) == sum(Δ₀(C), ⋆₀⁻¹(d̃₁(⋆₁(d₀(C)))))", "C",
         OperatorMatrix(lap.domain(), lap.codomain(), SparseMatrix(2.0 * lap.matrix()))},
        {"u :: Form1\n∂ₜ(u) == d₀(⋆₀⁻¹(d̃₁(⋆₁(u))))", "u", one_form},
    };
    for (const Case& c : cases) {
      const Decapode d = parse_decapode(c.source);
      const ExecutableProgram p = env.compile(d, {c.state}, {}, {{"k", VectorXd::Constant(1, k)}});
      Workspace ws = p.make_workspace();
      std::vector<VectorXd> tangent;
      for (int trial = 0; trial < 50; ++trial) {
        const VectorXd x = testing::random_vector(rng, c.matrix.cols());
        p.evaluate({x}, 0.0, ws, tangent);
        const VectorXd y = c.matrix.matrix() * x;
        worst = std::max(worst, (tangent[0] - y).lpNorm<Eigen::Infinity>() / y.lpNorm<Eigen::Infinity>());
        ++checks;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(checks) + " evaluations, worst relative ∞-norm gap " + fmt("%.2e", worst)};
}

Outcome rk4_order() {
  const Env env(testing::single_vertex());
  const ExecutableProgram p = env.compile(parse_decapode("y :: Form0\n∂ₜ(y) == neg(y)"), {"y"});
  auto error = [&](double dt) {
    SimState init = make_state(p, *env.mesh);
    init.fields[0].values[0] = 1.0;
    const Trajectory t = integrate(p, init, SolverConfig{Method::RK4, dt, 1.0, 1000});
    return std::abs(t.snapshots.back().fields[0].values[0] - std::exp(-1.0));
  };
  const double e1 = error(0.1), e2 = error(0.05);
  const double ratio = e1 / e2;
  return {ratio >= 12 && ratio <= 20,
          "error dt=0.1 " + fmt("%.3e", e1) + ", dt=0.05 " + fmt("%.3e", e2) + ", ratio " + fmt("%.2f", ratio)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // <= 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exactness of d∘d", 1.0, exactness},
      {2, "barycentric dual partition", 1.0, dual_partition},
      {3, "Laplacian eigenfunction", 10.0, laplacian_eigenfunction},
      {4, "heat-equation benchmark", 60.0, heat_benchmark},
      {5, "conservation under zero flux", 30.0, conservation},
      {6, "compilability pair", 0.0, compilability_pair},
      {7, "advection-diffusion composition", 0.0, composition},
      {8, "scheduler properties", 10.0, scheduler_properties},
      {9, "program/matrix equivalence", 0.0, program_matrix_equivalence},
      {10, "RK4 order", 0.0, rk4_order},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", c.budget_seconds) + " s budget";
    }
    std::printf("criterion %2d: %s  %s (%s; %.3f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
