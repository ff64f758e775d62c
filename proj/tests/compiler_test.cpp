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

#include <algorithm>
#include <functional>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "decapode/decapode_json.hpp"
#include "decapode/dual_mesh.hpp"
#include "decapode/error.hpp"
#include "decapode/operator_cache.hpp"
#include "decapode/parser.hpp"
#include "decapode/program.hpp"
#include "decapode/schedule.hpp"
#include "decapode/validate.hpp"
#include "test_support.hpp"

namespace decapode {
namespace {

using Eigen::VectorXd;
using testing::model_text;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

std::vector<std::string> ops(const Schedule& s) {
  std::vector<std::string> out;
  for (const Call& c : s.calls) out.push_back(c.op);
  return out;
}

struct Fixture {
  std::shared_ptr<const SimplicialMesh2D> mesh;
  std::shared_ptr<const OperatorCache> cache;

  explicit Fixture(SimplicialMesh2D m) : mesh(std::make_shared<const SimplicialMesh2D>(std::move(m))) {
    cache = std::make_shared<const OperatorCache>(mesh, std::make_shared<const DualMesh>(build_dual(*mesh)));
  }

  ExecutableProgram program(const Schedule& s, HodgeVariant v = HodgeVariant::Geometric,
                            const ParameterValues& p = {{"k", VectorXd::Constant(1, 1.0)}}) const {
    return decapode::bind(s, standard_registry(cache, v), *mesh, p);
  }
};

TEST(Schedule, ExplicitDiffusionChain) {
  const Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  EXPECT_EQ(ops(s), (std::vector<std::string>{"d₀", "k", "⋆₁", "d̃₁", "⋆₀⁻¹"}));
  EXPECT_EQ(s.calls.back().output, tangent_name("C"));
  EXPECT_EQ(s.calls[2].output, "ϕ");
  for (const Call& c : s.calls) EXPECT_EQ(c.kind, CallKind::Unary);
  ASSERT_EQ(s.tangent_vars.size(), 1u);
  EXPECT_EQ(s.tangent_vars[0], (std::pair<std::string, std::string>{tangent_name("C"), "C"}));
  EXPECT_TRUE(testing::soundness_failure(s).empty());
}

TEST(Schedule, ImplicitDiffusionIsNotCompilable) {
  try {
    schedule(parse_decapode(model_text("diffusion_implicit.dec")), {"C"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCompilable);
    EXPECT_NE(std::string(e.what()).find("rule 3: ϕ has no defining operator"), std::string::npos) << e.what();
  }
}

TEST(Schedule, ReverseRowOrderNeedsMoreSweepsButSameCalls) {
  const Decapode forward = parse_decapode("a == f(C)\nb == g(a)\nc == h(b)\n∂ₜ(C) == q(c)");
  const Decapode backward = parse_decapode("∂ₜ(C) == q(c)\nc == h(b)\nb == g(a)\na == f(C)");
  const Schedule sf = schedule(forward, {"C"}), sb = schedule(backward, {"C"});
  EXPECT_EQ(testing::call_tuples(sf), testing::call_tuples(sb));
  EXPECT_EQ(ops(sb), (std::vector<std::string>{"f", "g", "h", "q"}));
  EXPECT_GT(sweep(backward, {"C"}).sweeps, sweep(forward, {"C"}).sweeps);
}

TEST(Schedule, Op1BeforeOp2BeforeSigmaWithinASweep) {
  const Decapode d = parse_decapode("s == sum(C, C)\np == C * C\nu == f(C)\n∂ₜ(C) == sum(s, p, u)");
  const Schedule s = schedule(d, {"C"});
  EXPECT_EQ(ops(s), (std::vector<std::string>{"f", "*", "+", "+"}));
  EXPECT_EQ(s.calls[1].kind, CallKind::Binary);
  EXPECT_EQ(s.calls[2].kind, CallKind::Varargs);
  EXPECT_EQ(s.calls[3].inputs.size(), 3u);
}

TEST(Schedule, CycleInRawSweep) {
  const Decapode d = parse_decapode("a == f(b)\nb == g(a)\n∂ₜ(C) == h(a)");
  const SweepResult r = sweep(d, {"C"});
  EXPECT_FALSE(r.complete());
  EXPECT_EQ(code_of([&] { schedule(d, {"C"}); }), ErrorCode::NotCompilable);
}

TEST(Schedule, JsonAndListing) {
  const Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  const std::string json = schedule_to_json(s);
  EXPECT_NE(json.find("\"kind\": \"unary\""), std::string::npos);
  EXPECT_NE(json.find("\"op\": \"⋆₀⁻¹\""), std::string::npos);
  const std::string listing = schedule_listing(s);
  EXPECT_NE(listing.find("  0: •1 = d₀(C)"), std::string::npos) << listing;
  EXPECT_EQ(std::count(listing.begin(), listing.end(), '\n'), 5);
}

TEST(Schedule, Determinism) {
  const Decapode d = parse_decapode(model_text("diffusion.dec"));
  const Decapode copy = decapode_from_json(decapode_to_json(d)).decapode;
  EXPECT_EQ(schedule_to_json(schedule(d, {"C"})), schedule_to_json(schedule(copy, {"C"})));
}

TEST(Schedule, RandomCorpusProperties) {
  std::mt19937 rng(99);
  int compiled = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = testing::random_model(rng);
    const ValidationReport report = validate(m.decapode, m.states);
    bool ok = true;
    Schedule s;
    try {
      s = schedule(m.decapode, m.states);
    } catch (const Error&) {
      ok = false;
    }
    ASSERT_EQ(ok, report.empty()) << report.to_string() << print_decapode(m.decapode);
    if (!ok) continue;
    ++compiled;
    EXPECT_EQ(testing::soundness_failure(s), "");
    EXPECT_EQ(testing::call_tuples(s), testing::row_tuples(m.decapode));
  }
  EXPECT_GT(compiled, 30);
  EXPECT_LT(compiled, 270);
}

BoundaryMask zero_mask(const std::string& target, std::vector<std::size_t> idx) {
  return BoundaryMask{target, std::move(idx), MaskMode::SetZero, {}};
}

TEST(Masks, Placement) {
  const Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  EXPECT_EQ(attach_masks(s, {}).calls, s.calls);

  const Schedule tangent = attach_masks(s, {zero_mask(tangent_name("C"), {0})});
  ASSERT_EQ(tangent.calls.size(), 6u);
  EXPECT_EQ(tangent.calls.back().kind, CallKind::Mask);

  const Schedule state = attach_masks(s, {zero_mask("C", {0})});
  EXPECT_EQ(state.calls.front().kind, CallKind::Mask);

  const Schedule anon = attach_masks(s, {zero_mask("•2", {0}), zero_mask("•2", {1})});
  ASSERT_EQ(anon.calls.size(), 7u);
  EXPECT_EQ(anon.calls[1].output, "•2");
  EXPECT_EQ(anon.calls[2].kind, CallKind::Mask);
  EXPECT_EQ(anon.calls[3].kind, CallKind::Mask);
  EXPECT_EQ(anon.calls[3].mask, 1u);
  EXPECT_EQ(anon.calls[4].op, "⋆₁");
}

TEST(Masks, Errors) {
  const Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  EXPECT_EQ(code_of([&] { attach_masks(s, {zero_mask("nope", {0})}); }), ErrorCode::InvalidArgument);
  const auto mesh = generate_grid(2, 2, 1.0, 1.0);
  EXPECT_EQ(code_of([&] { attach_masks(s, {zero_mask("C", {9})}, &mesh); }), ErrorCode::InvalidArgument);
  attach_masks(s, {zero_mask("C", {8})}, &mesh);
  BoundaryMask bad{"C", {0, 1}, MaskMode::SetValue, {1.0}};
  EXPECT_EQ(code_of([&] { attach_masks(s, {bad}); }), ErrorCode::InvalidArgument);
}

TEST(Masks, BoundaryIndices) {
  const auto m = generate_grid(2, 2, 1.0, 1.0);
  EXPECT_EQ(boundary_indices(m, FormType::primal(0)).size(), 8u);
  EXPECT_EQ(boundary_indices(m, FormType::dual(1)).size(), 8u);
  EXPECT_EQ(boundary_indices(m, FormType::primal(2)).size(), 6u);
  EXPECT_EQ(boundary_indices(generate_grid(3, 3, 1.0, 1.0), FormType::primal(2)).size(), 10u);
}

TEST(Masks, IdempotentAndExact) {
  const Fixture f(generate_grid(6, 6, 1.0, 1.0));
  Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  const auto boundary = boundary_indices(*f.mesh, FormType::primal(0));
  BoundaryMask values{tangent_name("C"), boundary, MaskMode::SetValue, std::vector<double>(boundary.size(), 0.25)};
  const Schedule once = attach_masks(s, {values}, f.mesh.get());
  const Schedule twice = attach_masks(s, {values, values}, f.mesh.get());
  std::mt19937 rng(4);
  const VectorXd c = testing::random_vector(rng, static_cast<Eigen::Index>(f.mesh->num_vertices()));
  const auto t1 = f.program(once).evaluate({c});
  const auto t2 = f.program(twice).evaluate({c});
  EXPECT_EQ(t1[0], t2[0]);
  for (std::size_t i : boundary) EXPECT_EQ(t1[0][static_cast<Eigen::Index>(i)], 0.25);
}

TEST(Program, ConstantStateHasZeroTangent) {
  const Fixture f(generate_grid(16, 16, 1.0, 1.0));
  const Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  for (auto variant : {HodgeVariant::Diagonal, HodgeVariant::Geometric}) {
    const ExecutableProgram p = f.program(s, variant);
    const auto t = p.evaluate({VectorXd::Constant(static_cast<Eigen::Index>(f.mesh->num_vertices()), 3.0)});
    EXPECT_LE(t[0].lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(Program, MissingBinding) {
  const Fixture f(generate_grid(2, 2, 1.0, 1.0));
  const Schedule s = schedule(parse_decapode("C :: Form0\n∂ₜ(C) == frobnicate(C)"), {"C"});
  try {
    decapode::bind(s, OperatorRegistry{}, *f.mesh);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingBinding);
    EXPECT_NE(std::string(e.what()).find("frobnicate"), std::string::npos);
  }
  const Schedule diffusion = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  EXPECT_EQ(code_of([&] { f.program(diffusion, HodgeVariant::Geometric, {}); }), ErrorCode::MissingBinding);
}

TEST(Program, TypeMismatch) {
  const Fixture f(generate_grid(2, 2, 1.0, 1.0));
  Decapode d;
  const VarId c = d.add_var("C", VarType::of(FormType::primal(1)));
  const VarId cdot = d.add_var(tangent_name("C"), VarType::of(FormType::primal(1)));
  d.add_tvar(cdot);
  d.add_op1(c, cdot, std::string(kTimeDerivative));
  d.add_op1(c, cdot, "d₀");
  const Schedule s = schedule(d, {"C"});
  EXPECT_EQ(code_of([&] { f.program(s); }), ErrorCode::BindingTypeError);
}

TEST(Program, MatchesLaplacianMatrix) {
  const Fixture f(generate_grid(16, 16, 1.0, 1.0));
  const Schedule s = schedule(parse_decapode(model_text("diffusion.dec")), {"C"});
  std::mt19937 rng(6);
  for (auto variant : {HodgeVariant::Diagonal, HodgeVariant::Geometric}) {
    const ExecutableProgram p = f.program(s, variant);
    const auto L = f.cache->get(OperatorKind::Laplacian0, 0, variant);
    Workspace ws = p.make_workspace();
    std::vector<VectorXd> tangent;
    for (int trial = 0; trial < 50; ++trial) {
      const VectorXd c = testing::random_vector(rng, L->cols());
      p.evaluate({c}, 0.0, ws, tangent);
      const VectorXd expect = L->apply(c);
      EXPECT_LE((tangent[0] - expect).lpNorm<Eigen::Infinity>(), 1e-12 * expect.lpNorm<Eigen::Infinity>());
    }
  }
}

TEST(Program, BinaryVarargsAndPointwise) {
  const Fixture f(generate_grid(3, 3, 1.0, 1.0));
  const Decapode d = parse_decapode("C :: Form0\nparam a\n∂ₜ(C) == sum(C * a, neg(C), ∧(C, C))");
  const Schedule s = schedule(d, {"C"});
  const ExecutableProgram p = f.program(s, HodgeVariant::Geometric, {{"a", VectorXd::Constant(1, 3.0)}});
  std::mt19937 rng(1);
  const VectorXd c = testing::random_vector(rng, static_cast<Eigen::Index>(f.mesh->num_vertices()));
  const VectorXd expect = 3.0 * c - c + c.cwiseProduct(c);
  EXPECT_LE((p.evaluate({c})[0] - expect).lpNorm<Eigen::Infinity>(), 1e-15);
  EXPECT_EQ(p.var_type("a"), VarType::literal());
  EXPECT_EQ(p.var_size("C"), f.mesh->num_vertices());
}

TEST(Program, FieldParameter) {
  const Fixture f(generate_grid(3, 3, 1.0, 1.0));
  const Decapode d = parse_decapode("C :: Form0\nparam g :: Form0\n∂ₜ(C) == C * g");
  const Schedule s = schedule(d, {"C"});
  const auto n = static_cast<Eigen::Index>(f.mesh->num_vertices());
  const VectorXd g = VectorXd::LinSpaced(n, 0, 1);
  const ExecutableProgram p = f.program(s, HodgeVariant::Geometric, {{"g", g}});
  const VectorXd c = VectorXd::Constant(n, 2.0);
  EXPECT_EQ(p.evaluate({c})[0], 2.0 * g);
  EXPECT_EQ(code_of([&] { f.program(s, HodgeVariant::Geometric, {{"g", VectorXd::Ones(3)}}); }),
            ErrorCode::BindingTypeError);
}

TEST(Program, StateLayoutMismatch) {
  const Fixture f(generate_grid(2, 2, 1.0, 1.0));
  const ExecutableProgram p = f.program(schedule(parse_decapode(model_text("diffusion.dec")), {"C"}));
  EXPECT_EQ(code_of([&] { p.evaluate({VectorXd::Zero(3)}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { p.evaluate({}); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace decapode
