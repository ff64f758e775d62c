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

#include "decapode_cli/manifest.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "decapode/dot.hpp"
#include "decapode/error.hpp"
#include "decapode/obj_io.hpp"
#include "decapode/operator_cache.hpp"
#include "decapode/program.hpp"
#include "decapode/trajectory_io.hpp"
#include "decapode/type_inference.hpp"

namespace decapode::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> numbers(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

Subdivision parse_subdivision(const std::string& s) {
  if (s == "barycentric") return Subdivision::Barycentric;
  if (s == "circumcentric") return Subdivision::Circumcentric;
  throw Error(ErrorCode::MalformedInput, "unknown subdivision '" + s + "'");
}

HodgeVariant parse_hodge(const std::string& s) {
  if (s == "diagonal") return HodgeVariant::Diagonal;
  if (s == "geometric") return HodgeVariant::Geometric;
  throw Error(ErrorCode::MalformedInput, "unknown hodge variant '" + s + "'");
}

MaskMode parse_mode(const std::string& s) {
  if (s == "zero") return MaskMode::SetZero;
  if (s == "value") return MaskMode::SetValue;
  throw Error(ErrorCode::MalformedInput, "unknown mask mode '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "rk4") return Method::RK4;
  if (s == "euler") return Method::Euler;
  throw Error(ErrorCode::MalformedInput, "unknown method '" + s + "'");
}

void parse_into(RunManifest& m, const json& doc) {
  const auto resolve = [&](const std::string& p) { return (m.base_dir / p).lexically_normal(); };

  const json& mesh = doc.at("mesh");
  if (mesh.contains("obj")) {
    m.mesh.generate = false;
    m.mesh.obj = resolve(mesh.at("obj").get<std::string>());
  } else {
    const json& g = mesh.at("generate");
    m.mesh.nx = g.value("nx", m.mesh.nx);
    m.mesh.ny = g.value("ny", m.mesh.ny);
    m.mesh.lx = g.value("lx", m.mesh.lx);
    m.mesh.ly = g.value("ly", m.mesh.ly);
  }
  m.subdivision = parse_subdivision(doc.value("subdivision", std::string("barycentric")));
  m.hodge = parse_hodge(doc.value("hodge", std::string("geometric")));

  const json& models = doc.at("models");
  if (models.is_string()) {
    m.models.push_back(resolve(models.get<std::string>()));
  } else {
    for (const auto& p : models) m.models.push_back(resolve(p.get<std::string>()));
  }
  if (m.models.empty()) throw Error(ErrorCode::MalformedInput, "manifest lists no models");
  if (doc.contains("pattern")) m.pattern = resolve(doc.at("pattern").get<std::string>());
  m.state = doc.at("state").get<std::vector<std::string>>();

  const json params = doc.value("parameters", json::object());
  for (const auto& [name, v] : params.items()) m.parameters[name] = numbers(v);

  const json initial = doc.value("initial", json::object());
  for (const auto& [name, v] : initial.items()) {
    InitialProfile p;
    if (v.is_number()) {
      p.value = v.get<double>();
    } else if (v.is_array()) {
      p.profile = "values";
      p.values = v.get<std::vector<double>>();
    } else {
      p.profile = v.value("profile", std::string(v.contains("values") ? "values" : "constant"));
      p.value = v.value("value", 0.0);
      if (v.contains("center")) {
        const auto c = v.at("center").get<std::vector<double>>();
        if (c.size() != 2) throw Error(ErrorCode::MalformedInput, "center needs two coordinates");
        p.center = {c[0], c[1]};
      }
      p.width = v.value("width", p.width);
      p.amplitude = v.value("amplitude", p.amplitude);
      if (v.contains("values")) p.values = v.at("values").get<std::vector<double>>();
    }
    m.initial[name] = std::move(p);
  }

  const json masks = doc.value("masks", json::array());
  for (const auto& v : masks) {
    MaskEntry s;
    s.target = v.at("target").get<std::string>();
    s.where = v.value("where", std::string("boundary"));
    if (s.where == "indices") {
      s.indices = v.at("indices").get<std::vector<std::size_t>>();
    } else if (s.where != "boundary") {
      throw Error(ErrorCode::MalformedInput, "mask 'where' must be boundary or indices");
    }
    s.mode = parse_mode(v.value("mode", std::string("zero")));
    s.value = v.value("value", 0.0);
    m.masks.push_back(std::move(s));
  }

  const json& solver = doc.at("solver");
  m.solver.method = parse_method(solver.value("method", std::string("rk4")));
  m.solver.t_end = solver.at("t_end").get<double>();
  m.solver.record_every = solver.value("record_every", std::size_t{1});
  m.solver.divergence_threshold = solver.value("divergence_threshold", m.solver.divergence_threshold);
  const json& dt = solver.at("dt");
  if (dt.is_object()) {
    m.cfl = dt.value("cfl", 0.2);
    m.cfl_diffusivity = dt.value("diffusivity", 1.0);
  } else {
    m.solver.dt = dt.get<double>();
  }

  const json outputs = doc.value("outputs", json::object());
  if (outputs.contains("csv")) m.csv = resolve(outputs.at("csv").get<std::string>());
  if (outputs.contains("vtk_prefix")) m.vtk_prefix = resolve(outputs.at("vtk_prefix").get<std::string>());
  if (outputs.contains("dot")) m.dot = resolve(outputs.at("dot").get<std::string>());

  if (doc.contains("reference")) {
    const json& r = doc.at("reference");
    ReferenceEntry ref{r.at("type").get<std::string>(), r.at("var").get<std::string>(), r.value("diffusivity", 1.0)};
    if (ref.type != "heat_sin_sin") throw Error(ErrorCode::MalformedInput, "unknown reference '" + ref.type + "'");
    m.reference = ref;
  }
}

Eigen::VectorXd profile_values(const InitialProfile& p, const std::vector<Point>& points, double lx, double ly,
                               const std::string& name) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::VectorXd out(n);
  if (p.profile == "values") {
    if (static_cast<Eigen::Index>(p.values.size()) != n) {
      throw Error(ErrorCode::MalformedInput, "initial '" + name + "' has " + std::to_string(p.values.size()) +
                                                 " values, expected " + std::to_string(n));
    }
    for (Eigen::Index i = 0; i < n; ++i) out[i] = p.values[static_cast<std::size_t>(i)];
    return out;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point& x = points[static_cast<std::size_t>(i)];
    if (p.profile == "constant") {
      out[i] = p.value;
    } else if (p.profile == "sin_sin") {
      out[i] = std::sin(std::numbers::pi * x.x() / lx) * std::sin(std::numbers::pi * x.y() / ly);
    } else if (p.profile == "gaussian") {
      const double dx = x.x() - p.center[0], dy = x.y() - p.center[1];
      out[i] = p.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * p.width * p.width));
    } else {
      throw Error(ErrorCode::MalformedInput, "unknown initial profile '" + p.profile + "'");
    }
  }
  return out;
}

// Points at which each form space is sampled: vertices, edge midpoints or
// triangle barycenters.
std::vector<Point> sample_points(const SimplicialMesh2D& mesh, const DualMesh& dual, FormType type) {
  switch (type.simplex_dimension()) {
    case 0: return mesh.vertices();
    case 1: return dual.edge_midpoints;
    default: {
      std::vector<Point> out;
      for (const Triangle& t : mesh.triangles()) {
        out.push_back((mesh.vertices()[t[0]] + mesh.vertices()[t[1]] + mesh.vertices()[t[2]]) / 3.0);
      }
      return out;
    }
  }
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path() && !fs::exists(p.parent_path())) {
    throw Error(ErrorCode::IoError, "output directory '" + p.parent_path().string() + "' does not exist");
  }
}

void write_text(const fs::path& p, const std::string& text) {
  ensure_parent(p);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + p.string() + "' for writing");
  out << text;
}

}  // namespace

RunManifest load_manifest(const fs::path& path) {
  const std::string text = read_file(path);
  RunManifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  try {
    parse_into(m, json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, "manifest " + path.string() + ": " + e.what());
  }
  return m;
}

OpenDecapode load_model_file(const fs::path& path) {
  OpenDecapode c = load_component(read_file(path));
  infer_types(c.decapode);
  return c;
}

Decapode assemble_model(const RunManifest& m) {
  std::vector<OpenDecapode> components;
  for (const fs::path& p : m.models) components.push_back(load_model_file(p));
  if (!m.pattern) {
    if (components.size() != 1) throw Error(ErrorCode::MalformedInput, "several models need a composition pattern");
    return std::move(components.front().decapode);
  }
  Decapode d = oapply(uwd_from_json(read_file(*m.pattern)), components);
  infer_types(d);
  return d;
}

RunSummary run_manifest(const RunManifest& m, bool emit_dot, std::ostream& log) {
  // Fail on a bad output path before spending time integrating.
  if (m.csv) ensure_parent(*m.csv);
  if (m.vtk_prefix) ensure_parent(*m.vtk_prefix);
  auto mesh = std::make_shared<const SimplicialMesh2D>(m.mesh.generate
                                                           ? generate_grid(m.mesh.nx, m.mesh.ny, m.mesh.lx, m.mesh.ly)
                                                           : load_obj(m.mesh.obj));
  auto dual = std::make_shared<const DualMesh>(build_dual(*mesh, m.subdivision));
  auto cache = std::make_shared<const OperatorCache>(mesh, dual);

  const Decapode model = assemble_model(m);
  RunSummary summary;
  if (emit_dot || m.dot) {
    fs::path dot_path = m.dot ? *m.dot : m.csv ? fs::path(m.csv->string() + ".dot") : m.base_dir / "model.dot";
    write_text(dot_path, to_dot(model));
    summary.written.push_back(dot_path);
  }

  Schedule s = schedule(model, m.state);
  std::vector<BoundaryMask> masks;
  for (const MaskEntry& entry : m.masks) {
    const auto id = model.find_var(entry.target);
    if (!id) throw Error(ErrorCode::InvalidArgument, "mask target '" + entry.target + "' is not a variable");
    BoundaryMask mask{entry.target, entry.indices, entry.mode, {}};
    if (entry.where == "boundary") {
      const VarType t = model.var(*id).type;
      if (!t.is_form()) throw Error(ErrorCode::InvalidArgument, "boundary mask on untyped '" + entry.target + "'");
      mask.indices = boundary_indices(*mesh, t.form);
    }
    if (entry.mode == MaskMode::SetValue) mask.values.assign(mask.indices.size(), entry.value);
    masks.push_back(std::move(mask));
  }
  s = attach_masks(s, masks, mesh.get());

  ParameterValues params;
  for (const auto& [name, values] : m.parameters) {
    params[name] = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  const ExecutableProgram program = decapode::bind(s, standard_registry(cache, m.hodge), *mesh, params);

  SimState init = make_state(program, *mesh);
  for (std::size_t i = 0; i < init.names.size(); ++i) {
    auto it = m.initial.find(init.names[i]);
    if (it == m.initial.end()) continue;
    init.fields[i].values = profile_values(it->second, sample_points(*mesh, *dual, init.fields[i].type), m.mesh.lx,
                                           m.mesh.ly, init.names[i]);
  }

  SolverConfig cfg = m.solver;
  if (m.cfl) cfg.dt = diffusion_cfl_dt(*mesh, m.cfl_diffusivity, *m.cfl);
  summary.dt = cfg.dt;
  log << "mesh: " << mesh->num_vertices() << " vertices, " << mesh->num_edges() << " edges, "
      << mesh->num_triangles() << " triangles\n";
  log << "schedule: " << s.calls.size() << " calls\n";
  log << "solver: " << to_string(cfg.method) << ", dt = " << cfg.dt << ", t_end = " << cfg.t_end << "\n";

  const Trajectory traj = integrate(program, init, cfg);
  summary.final_time = traj.times.back();
  summary.steps = cfg.t_end > init.time ? static_cast<std::size_t>(std::ceil((cfg.t_end - init.time) / cfg.dt - 1e-9)) : 0;
  log << "steps: " << summary.steps << ", snapshots: " << traj.snapshots.size() << "\n";

  const auto star0 = cache->get(OperatorKind::HodgeStar, 0);
  for (std::size_t i = 0; i < init.names.size(); ++i) {
    if (init.fields[i].type != FormType::primal(0)) continue;
    log << "total " << init.names[i] << ": " << total_quantity(traj.snapshots.front(), init.names[i], *star0)
        << " -> " << total_quantity(traj.snapshots.back(), init.names[i], *star0) << "\n";
  }

  if (m.reference) {
    const SimState& last = traj.snapshots.back();
    const Cochain& field = last.field(m.reference->var);
    const double rate =
        std::numbers::pi * std::numbers::pi * m.reference->diffusivity *
        (1.0 / (m.mesh.lx * m.mesh.lx) + 1.0 / (m.mesh.ly * m.mesh.ly));
    InitialProfile sin_sin;
    sin_sin.profile = "sin_sin";
    const Eigen::VectorXd exact =
        std::exp(-rate * last.time) *
        profile_values(sin_sin, sample_points(*mesh, *dual, field.type), m.mesh.lx, m.mesh.ly, m.reference->var);
    summary.reference_error = (field.values - exact).norm() / exact.norm();
    log << "relative L2 error vs analytic: " << *summary.reference_error << "\n";
  }

  if (m.csv) {
    ensure_parent(*m.csv);
    save_trajectory_csv(m.csv->string(), traj);
    summary.written.push_back(*m.csv);
  }
  if (m.vtk_prefix) {
    ensure_parent(*m.vtk_prefix);
    for (const std::string& p : save_vtk_series(m.vtk_prefix->string(), *mesh, traj)) summary.written.emplace_back(p);
  }
  for (const fs::path& p : summary.written) log << "wrote " << p.string() << "\n";
  return summary;
}

}  // namespace decapode::cli
