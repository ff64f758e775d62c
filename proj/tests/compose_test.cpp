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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "decapode/compose.hpp"
#include "decapode/decapode_json.hpp"
#include "decapode/error.hpp"
#include "decapode/parser.hpp"
#include "decapode/type_inference.hpp"
#include "decapode/validate.hpp"
#include "test_support.hpp"

namespace decapode {
namespace {

using testing::model_text;

OpenDecapode component(const std::string& path) { return load_component(model_text(path)); }

std::vector<OpenDecapode> advection_diffusion_components() {
  return {component("advection_diffusion/fick.dec"), component("advection_diffusion/advection.dec"),
          component("advection_diffusion/conservation.dec"), component("advection_diffusion/superposition.dec")};
}

UwdPattern advection_diffusion_pattern() { return uwd_from_json(model_text("advection_diffusion/pattern.json")); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

std::size_t expected_var_count(const UwdPattern& p, const std::vector<OpenDecapode>& cs) {
  std::size_t total = 0;
  for (const auto& c : cs) total += c.decapode.vars().size();
  for (std::size_t j = 0; j < p.junctions.size(); ++j) {
    const std::size_t deg = p.degree(j);
    total -= deg > 0 ? deg - 1 : 0;
    total += deg == 0 ? 1 : 0;
  }
  return total;
}

TEST(Uwd, JsonRoundTripAndNames) {
  const UwdPattern p = advection_diffusion_pattern();
  EXPECT_EQ(p.boxes.size(), 4u);
  EXPECT_EQ(p.junctions.size(), 5u);
  EXPECT_EQ(p.wires.size(), 10u);
  EXPECT_EQ(p.outer_ports, (std::vector<std::size_t>{4, 0}));
  EXPECT_EQ(p.degree(0), 3u);
  const UwdPattern back = uwd_from_json(uwd_to_json(p));
  EXPECT_EQ(uwd_to_json(back), uwd_to_json(p));
}

TEST(Uwd, CheckRejectsBadWiring) {
  UwdPattern p;
  p.add_box("a", {"x", "y"});
  const auto j = p.add_junction("j");
  p.wire(0, 0, j);
  EXPECT_EQ(code_of([&] { p.check(); }), ErrorCode::InvalidPattern);  // y unwired
  p.wire(0, 1, j);
  p.check();
  p.wire(0, 1, j);
  EXPECT_EQ(code_of([&] { p.check(); }), ErrorCode::InvalidPattern);  // y wired twice
  EXPECT_EQ(code_of([&] { uwd_from_json(R"({"boxes": [], "junctions": [], "wires": [{"box": "q"}]})"); }),
            ErrorCode::InvalidPattern);
  EXPECT_EQ(code_of([&] { uwd_from_json("{"); }), ErrorCode::MalformedInput);
}

TEST(Oapply, AdvectionDiffusionComposite) {
  const UwdPattern p = advection_diffusion_pattern();
  const auto cs = advection_diffusion_components();
  EXPECT_EQ(cs[0].decapode.vars().size(), 2u);
  EXPECT_EQ(cs[1].decapode.vars().size(), 3u);
  EXPECT_EQ(cs[2].decapode.vars().size(), 3u);
  EXPECT_EQ(cs[3].decapode.vars().size(), 3u);
  const Decapode d = oapply(p, cs);
  EXPECT_EQ(d.vars().size(), expected_var_count(p, cs));
  EXPECT_EQ(d.vars().size(), 6u);
  for (const char* name : {"T", "ϕ", "ϕ₁", "ϕ₂", "u", "Ṫ"}) EXPECT_TRUE(d.find_var(name)) << name;
  EXPECT_EQ(d.sigmas().size(), 1u);
  EXPECT_EQ(d.tvars().size(), 1u);
  EXPECT_EQ(d.var(d.var_id("T")).type, VarType::of(FormType::primal(0)));
  EXPECT_TRUE(d.var(d.var_id("u")).parameter);
  EXPECT_TRUE(validate(d, {"T"}).empty()) << validate(d, {"T"}).to_string();
}

TEST(Oapply, OpenCompositeExposesOuterPorts) {
  const OpenDecapode o = oapply_open(advection_diffusion_pattern(), advection_diffusion_components());
  EXPECT_EQ(o.exposed, (std::vector<std::string>{"u", "T"}));
}

TEST(Oapply, IdentityPatternIsIsomorphic) {
  for (const char* path : {"advection_diffusion/fick.dec", "advection_diffusion/advection.dec",
                           "advection_diffusion/superposition.dec", "diffusion_composed/flux.dec"}) {
    const OpenDecapode c = component(path);
    const Decapode d = oapply(identity_pattern(c), {c});
    EXPECT_TRUE(isomorphic(d, c.decapode, true)) << path << "\n" << print_decapode(d);
    // Re-serializing is stable.
    EXPECT_EQ(decapode_to_json(oapply(identity_pattern(c), {c})), decapode_to_json(d));
  }
}

TEST(Oapply, TwoDiffusionsGluedOnCViolateRule2) {
  OpenDecapode c{parse_decapode(model_text("diffusion.dec")), {"C"}};
  UwdPattern p;
  p.add_box("left", {"C"});
  p.add_box("right", {"C"});
  const auto j = p.add_junction("C");
  p.wire(0, 0, j);
  p.wire(1, 0, j);
  const Decapode d = oapply(p, {c, c});
  EXPECT_EQ(d.vars().size(), 2 * c.decapode.vars().size() - 1);
  const ValidationReport r = validate(d, {"C"});
  EXPECT_TRUE(r.has(2, "C")) << r.to_string();
}

TEST(Oapply, ArityMismatchNamesJunction) {
  auto cs = advection_diffusion_components();
  cs[0].exposed.pop_back();
  try {
    oapply(advection_diffusion_pattern(), cs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPattern);
    EXPECT_NE(std::string(e.what()).find("ϕ₁"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([&] { oapply(advection_diffusion_pattern(), {}); }), ErrorCode::InvalidPattern);
}

TEST(Oapply, TypeConflictNamesJunction) {
  OpenDecapode a{parse_decapode("x :: Form0\ny == d₀(x)"), {"x"}};
  OpenDecapode b{parse_decapode("x :: Form1\ny == d₁(x)"), {"x"}};
  UwdPattern p;
  p.add_box("a", {"x"});
  p.add_box("b", {"x"});
  const auto j = p.add_junction("shared");
  p.wire(0, 0, j);
  p.wire(1, 0, j);
  try {
    oapply(p, {a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeError);
    EXPECT_NE(std::string(e.what()).find("shared"), std::string::npos);
  }
}

TEST(Oapply, NamingRules) {
  OpenDecapode a{parse_decapode("y == f(x)\nz == g(h(y))"), {"x", "z"}};
  OpenDecapode b{parse_decapode("w == q(z)"), {"z", "w"}};
  UwdPattern p;
  p.add_box("a", {"x", "z"});
  p.add_box("b", {"z", "w"});
  const auto jx = p.add_junction("x");
  const auto jz = p.add_junction("");  // unnamed: least exposed name
  const auto jw = p.add_junction("out");
  const auto loose = p.add_junction("");
  p.wire(0, 0, jx);
  p.wire(0, 1, jz);
  p.wire(1, 0, jz);
  p.wire(1, 1, jw);
  const Decapode d = oapply(p, {a, b});
  for (const char* name : {"x", "z", "out", "a.y", "•1", "junction3"}) EXPECT_TRUE(d.find_var(name)) << name;
  (void)loose;
  EXPECT_EQ(d.vars().size(), expected_var_count(p, {a, b}));
}

TEST(Oapply, ParameterOperatorsFollowRenaming) {
  const UwdPattern p = uwd_from_json(model_text("diffusion_composed/pattern.json"));
  const Decapode d =
      oapply(p, {component("diffusion_composed/flux.dec"), component("diffusion_composed/conservation.dec")});
  EXPECT_TRUE(d.var(d.var_id("k")).parameter);
  EXPECT_TRUE(std::any_of(d.op1s().begin(), d.op1s().end(), [](const Op1& r) { return r.op1 == "k"; }));
  EXPECT_TRUE(validate(d, {"C"}).empty());
}

// Random chains of single-op components glued on shared names.
OpenDecapode link(const std::string& in, const std::string& out, const std::string& op) {
  Decapode d;
  const VarId a = d.add_var(in), b = d.add_var(out);
  const VarId mid = d.add_anonymous_var();
  d.add_op1(a, mid, op);
  d.add_op1(mid, b, op + "'");
  return {d, {in, out}};
}

TEST(Oapply, VarCountFormulaOnRandomPatterns) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t boxes = 1 + rng() % 5, junctions = 1 + rng() % 6;
    UwdPattern p;
    std::vector<OpenDecapode> cs;
    for (std::size_t j = 0; j < junctions; ++j) p.add_junction(rng() % 2 ? "j" + std::to_string(j) : "");
    for (std::size_t b = 0; b < boxes; ++b) {
      p.add_box("b" + std::to_string(b), {"in", "out"});
      cs.push_back(link("in", "out", "f" + std::to_string(b)));
      p.wire(b, 0, rng() % junctions);
      p.wire(b, 1, rng() % junctions);
    }
    // The same component wired in and out of one junction merges two of its vars.
    const Decapode d = oapply(p, cs);
    EXPECT_EQ(d.vars().size(), expected_var_count(p, cs)) << uwd_to_json(p);
    d.check_integrity();
  }
}

TEST(Oapply, PermutingBoxesGivesIsomorphicResult) {
  const UwdPattern p = advection_diffusion_pattern();
  const auto cs = advection_diffusion_components();
  std::vector<std::size_t> perm{2, 0, 3, 1};
  UwdPattern q;
  q.junctions = p.junctions;
  q.outer_ports = p.outer_ports;
  std::vector<OpenDecapode> qs;
  std::vector<std::size_t> where(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    q.boxes.push_back(p.boxes[perm[i]]);
    qs.push_back(cs[perm[i]]);
    where[perm[i]] = i;
  }
  for (const UwdWire& w : p.wires) q.wires.push_back({where[w.box], w.port, w.junction});
  EXPECT_TRUE(isomorphic(oapply(p, cs), oapply(q, qs)));
}

TEST(Oapply, NestedCompositionIsAssociative) {
  // a: x -> y, b: y -> z, c: z -> w, glued along a chain.
  const OpenDecapode a = link("x", "y", "f"), b = link("y", "z", "g"), c = link("z", "w", "h");
  auto pair_pattern = [](const std::string& l, const std::string& m, const std::string& r) {
    UwdPattern p;
    p.add_box("l", {l, m});
    p.add_box("r", {m, r});
    const auto jl = p.add_junction(l), jm = p.add_junction(m), jr = p.add_junction(r);
    p.wire(0, 0, jl);
    p.wire(0, 1, jm);
    p.wire(1, 0, jm);
    p.wire(1, 1, jr);
    p.outer_ports = {jl, jr};
    return p;
  };
  // Outer ends only: the inner junction becomes a plain var.
  const OpenDecapode ab = oapply_open(pair_pattern("x", "y", "z"), {a, b});
  const OpenDecapode left = oapply_open(pair_pattern("x", "z", "w"), {ab, c});
  const OpenDecapode bc = oapply_open(pair_pattern("y", "z", "w"), {b, c});
  const OpenDecapode right = oapply_open(pair_pattern("x", "y", "w"), {a, bc});
  EXPECT_TRUE(isomorphic(left.decapode, right.decapode)) << print_decapode(left.decapode) << "\n---\n"
                                                          << print_decapode(right.decapode);
  EXPECT_EQ(left.decapode.vars().size(), 7u);
}

TEST(Component, LoadsJsonOrEquations) {
  const OpenDecapode eq = component("advection_diffusion/advection.dec");
  const OpenDecapode js = load_component(decapode_to_json(eq.decapode, eq.exposed));
  EXPECT_EQ(js.exposed, eq.exposed);
  EXPECT_TRUE(isomorphic(js.decapode, eq.decapode, true));
  OpenDecapode bad{eq.decapode, {"C", "C"}};
  EXPECT_EQ(code_of([&] { bad.check(); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace decapode
