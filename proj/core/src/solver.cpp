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

#include "decapode/solver.hpp"

#include <cmath>

#include "decapode/error.hpp"

namespace decapode {

std::string to_string(Method method) { return method == Method::Euler ? "euler" : "rk4"; }

void SolverConfig::check() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidArgument, "t_end must be non-negative");
  if (record_every < 1) throw Error(ErrorCode::InvalidArgument, "record_every must be at least 1");
  if (!(divergence_threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "divergence_threshold must be positive");
}

const Cochain& SimState::field(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return fields.at(i);
  throw Error(ErrorCode::InvalidArgument, "state has no variable '" + name + "'");
}

SimState make_state(const ExecutableProgram& program, const SimplicialMesh2D& mesh) {
  SimState s;
  for (std::size_t i = 0; i < program.num_states(); ++i) {
    s.names.push_back(program.state_vars()[i]);
    s.fields.push_back(Cochain::zeros(mesh, program.state_type(i)));
  }
  return s;
}

namespace {

using Vectors = std::vector<Eigen::VectorXd>;

void check_layout(const ExecutableProgram& program, const SimState& init) {
  if (init.fields.size() != program.num_states() || init.names.size() != program.num_states()) {
    throw Error(ErrorCode::InvalidArgument, "initial state has " + std::to_string(init.fields.size()) +
                                                " fields, program expects " + std::to_string(program.num_states()));
  }
  for (std::size_t i = 0; i < program.num_states(); ++i) {
    const std::string& name = program.state_vars()[i];
    if (init.names[i] != name) {
      throw Error(ErrorCode::InvalidArgument, "initial field " + std::to_string(i) + " is '" + init.names[i] +
                                                  "', program expects '" + name + "'");
    }
    if (init.fields[i].type != program.state_type(i)) {
      throw Error(ErrorCode::InvalidArgument, "initial '" + name + "' is " + to_string(init.fields[i].type) +
                                                  ", program expects " + to_string(program.state_type(i)));
    }
    if (static_cast<std::size_t>(init.fields[i].values.size()) != program.var_size(name)) {
      throw Error(ErrorCode::InvalidArgument, "initial '" + name + "' has the wrong length");
    }
  }
}

void check_finite(const ExecutableProgram& program, const Vectors& y, std::size_t step, double t, double threshold) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (Eigen::Index j = 0; j < y[i].size(); ++j) {
      const double v = y[i][j];
      if (!std::isfinite(v) || std::abs(v) > threshold) {
        throw DivergedError(step, t, program.state_vars()[i], static_cast<std::size_t>(j), v);
      }
    }
  }
}

class Stepper {
 public:
  Stepper(const ExecutableProgram& program, const Vectors& shape)
      : program_(program), ws_(program.make_workspace()), k1_(shape), k2_(shape), k3_(shape), k4_(shape), tmp_(shape) {}

  void euler(Vectors& y, double t, double h) {
    program_.evaluate(y, t, ws_, k1_);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * k1_[i];
  }

  void rk4(Vectors& y, double t, double h) {
    program_.evaluate(y, t, ws_, k1_);
    stage(y, k1_, 0.5 * h);
    program_.evaluate(tmp_, t + 0.5 * h, ws_, k2_);
    stage(y, k2_, 0.5 * h);
    program_.evaluate(tmp_, t + 0.5 * h, ws_, k3_);
    stage(y, k3_, h);
    program_.evaluate(tmp_, t + h, ws_, k4_);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += (h / 6.0) * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  void stage(const Vectors& y, const Vectors& k, double h) {
    for (std::size_t i = 0; i < y.size(); ++i) tmp_[i] = y[i] + h * k[i];
    program_.apply_state_masks(tmp_);
  }

  const ExecutableProgram& program_;
  Workspace ws_;
  Vectors k1_, k2_, k3_, k4_, tmp_;
};

SimState snapshot(const SimState& layout, const Vectors& y, double t) {
  SimState s;
  s.names = layout.names;
  s.time = t;
  for (std::size_t i = 0; i < y.size(); ++i) s.fields.emplace_back(layout.fields[i].type, y[i]);
  return s;
}

}  // namespace

Trajectory integrate(const ExecutableProgram& program, const SimState& init, const SolverConfig& cfg) {
  cfg.check();
  check_layout(program, init);
  const double t0 = init.time;
  if (cfg.t_end < t0) throw Error(ErrorCode::InvalidArgument, "t_end is before the initial time");

  Vectors y;
  for (const Cochain& c : init.fields) y.push_back(c.values);
  program.apply_state_masks(y);
  check_finite(program, y, 0, t0, cfg.divergence_threshold);

  Trajectory traj;
  traj.times.push_back(t0);
  traj.snapshots.push_back(snapshot(init, y, t0));

  const double span = cfg.t_end - t0;
  // Steps of exactly dt, plus a shortened last one when dt does not divide
  // the span (tolerating round-off in the quotient).
  std::size_t steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
  if (span <= 0.0) steps = 0;

  Stepper stepper(program, y);
  double t = t0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_next = n == steps ? cfg.t_end : t0 + static_cast<double>(n) * cfg.dt;
    const double h = t_next - t;
    if (cfg.method == Method::Euler) {
      stepper.euler(y, t, h);
    } else {
      stepper.rk4(y, t, h);
    }
    program.apply_state_masks(y);
    t = t_next;
    check_finite(program, y, n, t, cfg.divergence_threshold);
    if (n % cfg.record_every == 0 || n == steps) {
      traj.times.push_back(t);
      traj.snapshots.push_back(snapshot(init, y, t));
    }
  }
  return traj;
}

double total_quantity(const SimState& state, const std::string& var, const OperatorMatrix& hodge0) {
  const Cochain& c = state.field(var);
  if (c.type != FormType::primal(0)) {
    throw Error(ErrorCode::InvalidArgument, "total_quantity needs a Form0, '" + var + "' is " + to_string(c.type));
  }
  if (hodge0.domain() != FormType::primal(0)) {
    throw Error(ErrorCode::InvalidArgument, "total_quantity needs the 0-form Hodge star");
  }
  return hodge0.apply(c.values).sum();
}

double diffusion_cfl_dt(const SimplicialMesh2D& mesh, double diffusivity, double c) {
  if (!(diffusivity > 0.0)) throw Error(ErrorCode::InvalidArgument, "diffusivity must be positive");
  const double h = mesh.min_edge_length();
  return c * h * h / diffusivity;
}

}  // namespace decapode
