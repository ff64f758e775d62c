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

#include "decapode_cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "decapode/compose.hpp"
#include "decapode/decapode_json.hpp"
#include "decapode/dot.hpp"
#include "decapode/matrix_market.hpp"
#include "decapode/obj_io.hpp"
#include "decapode/operator_cache.hpp"
#include "decapode/parser.hpp"
#include "decapode/program.hpp"
#include "decapode/schedule.hpp"
#include "decapode/type_inference.hpp"
#include "decapode/validate.hpp"
#include "decapode_cli/manifest.hpp"

namespace decapode::cli {

namespace fs = std::filesystem;

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoError: return kExitIo;
    case ErrorCode::Diverged: return kExitDiverged;
    default: return kExitModel;
  }
}

namespace {

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

// Sources of ∂ₜ rows, in row order.
std::vector<std::string> default_states(const Decapode& d) {
  std::vector<std::string> out;
  for (const Op1& op : d.op1s()) {
    if (op.op1 != kTimeDerivative) continue;
    const std::string& name = d.var(op.src).name;
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

struct MeshArgs {
  std::size_t nx = 16;
  std::size_t ny = 16;
  double lx = 1.0;
  double ly = 1.0;
  std::string obj;
};

void add_mesh_options(CLI::App* cmd, MeshArgs& a) {
  cmd->add_option("--nx", a.nx, "Cells along x")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--ny", a.ny, "Cells along y")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--lx", a.lx, "Extent along x")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--ly", a.ly, "Extent along y")->check(CLI::PositiveNumber)->capture_default_str();
}

SimplicialMesh2D make_mesh(const MeshArgs& a) {
  return a.obj.empty() ? generate_grid(a.nx, a.ny, a.lx, a.ly) : load_obj(a.obj);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile and simulate exterior-calculus equation models", "decapode"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every verb");

  // mesh gen
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
  mesh_cmd->require_subcommand(1);
  CLI::App* gen = mesh_cmd->add_subcommand("gen", "Write a structured triangle grid as OBJ");
  MeshArgs gen_args;
  std::string gen_out = "mesh.obj";
  add_mesh_options(gen, gen_args);
  gen->add_option("--out,-o", gen_out, "Output OBJ path")->capture_default_str();

  // check
  CLI::App* check = app.add_subcommand("check", "Validate a model and print its schedule");
  std::string check_model;
  std::vector<std::string> check_states;
  bool emit_schedule = false;
  check->add_option("model", check_model, "Model file (equations or decapode JSON)")->required();
  check->add_option("--state,-s", check_states, "State variables (default: every ∂ₜ source)")->delimiter(',');
  check->add_flag("--emit-schedule", emit_schedule, "Print the schedule as JSON");

  // dot
  CLI::App* dot = app.add_subcommand("dot", "Render a model as Graphviz DOT");
  std::string dot_model, dot_out;
  dot->add_option("model", dot_model, "Model file")->required();
  dot->add_option("--out,-o", dot_out, "Output path (default: stdout)");

  // compose
  CLI::App* compose_cmd = app.add_subcommand("compose", "Glue component models along a wiring diagram");
  std::string pattern_path, compose_out, compose_format = "json";
  std::vector<std::string> component_paths;
  compose_cmd->add_option("pattern", pattern_path, "Wiring diagram JSON")->required();
  compose_cmd->add_option("components", component_paths, "One component file per box, in box order")->required();
  compose_cmd->add_option("--out,-o", compose_out, "Output path (default: stdout)");
  compose_cmd->add_option("--format", compose_format, "json or equations")
      ->check(CLI::IsMember({"json", "equations"}))
      ->capture_default_str();

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "Run a manifest");
  std::string manifest_path;
  bool emit_dot = false;
  simulate->add_option("manifest", manifest_path, "Run manifest (JSON)")->required();
  simulate->add_flag("--emit-dot", emit_dot, "Also write the model's DOT next to the outputs");

  // export
  CLI::App* export_cmd = app.add_subcommand("export", "Write an operator matrix (Matrix Market) or mesh (OBJ)");
  MeshArgs export_args;
  std::string export_op, export_out, export_obj_out, hodge = "geometric", subdivision = "barycentric";
  add_mesh_options(export_cmd, export_args);
  export_cmd->add_option("--mesh", export_args.obj, "Read the mesh from an OBJ file instead");
  export_cmd->add_option("--operator", export_op, "Operator name, e.g. d0, star1, inv_star0, lap0");
  export_cmd->add_option("--out,-o", export_out, "Matrix Market output path");
  export_cmd->add_option("--obj-out", export_obj_out, "Also write the mesh as OBJ");
  export_cmd->add_option("--hodge", hodge, "diagonal or geometric")
      ->check(CLI::IsMember({"diagonal", "geometric"}))
      ->capture_default_str();
  export_cmd->add_option("--subdivision", subdivision, "barycentric or circumcentric")
      ->check(CLI::IsMember({"barycentric", "circumcentric"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitModel;
  }

  try {
    if (*gen) {
      const SimplicialMesh2D mesh = make_mesh(gen_args);
      save_obj(mesh, gen_out);
      out << "wrote " << gen_out << ": " << mesh.num_vertices() << " vertices, " << mesh.num_edges() << " edges, "
          << mesh.num_triangles() << " triangles\n";
      return kExitOk;
    }
    if (*check) {
      const Decapode d = load_model_file(check_model).decapode;
      const std::vector<std::string> states = check_states.empty() ? default_states(d) : check_states;
      const ValidationReport report = validate(d, states);
      if (!report.empty()) {
        out << report.to_string();
        return kExitModel;
      }
      const Schedule s = schedule(d, states);
      if (emit_schedule) {
        out << schedule_to_json(s);
      } else {
        out << "compilable: " << s.calls.size() << " calls\n" << schedule_listing(s);
      }
      return kExitOk;
    }
    if (*dot) {
      write_output(dot_out, to_dot(load_model_file(dot_model).decapode), out);
      return kExitOk;
    }
    if (*compose_cmd) {
      std::ifstream in(pattern_path, std::ios::binary);
      if (!in) throw Error(ErrorCode::IoError, "cannot read '" + pattern_path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      const UwdPattern pattern = uwd_from_json(ss.str());
      std::vector<OpenDecapode> components;
      for (const std::string& p : component_paths) components.push_back(load_model_file(p));
      OpenDecapode composite = oapply_open(pattern, components);
      infer_types(composite.decapode);
      write_output(compose_out,
                   compose_format == "json" ? decapode_to_json(composite.decapode, composite.exposed)
                                            : print_decapode(composite.decapode, composite.exposed),
                   out);
      return kExitOk;
    }
    if (*simulate) {
      const RunManifest m = load_manifest(manifest_path);
      run_manifest(m, emit_dot, out);
      return kExitOk;
    }
    if (*export_cmd) {
      if (export_op.empty() && export_obj_out.empty()) {
        err << "export: nothing to do (give --operator and --out, or --obj-out)\n";
        return kExitModel;
      }
      auto mesh = std::make_shared<const SimplicialMesh2D>(make_mesh(export_args));
      if (!export_obj_out.empty()) {
        save_obj(*mesh, export_obj_out);
        out << "wrote " << export_obj_out << "\n";
      }
      if (!export_op.empty()) {
        if (export_out.empty()) {
          err << "export: --operator needs --out\n";
          return kExitModel;
        }
        auto dual = std::make_shared<const DualMesh>(build_dual(
            *mesh, subdivision == "barycentric" ? Subdivision::Barycentric : Subdivision::Circumcentric));
        auto cache = std::make_shared<const OperatorCache>(mesh, dual);
        const OperatorRegistry registry =
            standard_registry(cache, hodge == "geometric" ? HodgeVariant::Geometric : HodgeVariant::Diagonal);
        const std::string name = canonical_operator_name(export_op);
        const UnaryKernel* k = registry.unary(name);
        if (k == nullptr || !k->matrix) throw Error(ErrorCode::MissingBinding, "no linear operator '" + export_op + "'");
        const auto m = k->matrix();
        const OperatorMatrix explicit_matrix(m->domain(), m->codomain(), m->to_sparse());
        save_matrix_market(explicit_matrix, export_out);
        out << "wrote " << export_out << ": " << name << " " << m->rows() << "x" << m->cols() << "\n";
      }
      return kExitOk;
    }
  } catch (const DivergedError& e) {
    err << "diverged at step " << e.step() << " (t = " << e.time() << "): " << e.variable() << "[" << e.index()
        << "] = " << e.value() << "\n";
    return kExitDiverged;
  } catch (const SyntaxError& e) {
    err << "syntax error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kExitModel;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitModel;
  }
  return kExitModel;
}

}  // namespace decapode::cli
