// Copyright 2026 The clsi-lab Authors
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

// clsi-lab: command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "clsi/bound.hpp"
#include "clsi/ccgeom.hpp"
#include "clsi/design.hpp"
#include "clsi/entropy.hpp"
#include "clsi/errors.hpp"
#include "clsi/fixedpoint.hpp"
#include "clsi/interval.hpp"
#include "clsi/lindblad.hpp"
#include "clsi/mlsi.hpp"

using namespace clsi;
namespace fs = std::filesystem;

namespace {

void emit(const io::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    io::write_json(out, j);
  }
}

DensityOperator load_state(const std::string& path) {
  return DensityOperator::from_matrix(io::matrix_from_json(io::read_json(path)));
}

std::vector<double> time_grid(double t_max, int points) {
  std::vector<double> t;
  for (int k = 0; k < points; ++k) t.push_back(t_max * k / std::max(1, points - 1));
  return t;
}

void write_curve_csv(const fs::path& path, const entropy::DecayCurve& c) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << std::setprecision(17) << "t,relative_entropy,fisher\n";
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    f << c.times[k] << "," << c.entropies[k] << "," << c.fisher[k] << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for entropy decay of symmetric quantum Markov semigroups"};
  app.require_subcommand(1);

  std::string generator, state, out, config, density = "1";
  double t = 1.0, t_max = 5.0, periodic_k = -1.0;
  int points = 51, ancilla = 1, samples = 200, targets = 4, segments = 12, pool = 400, grid = 1024, matrix_dim = 1;
  double n_param = 1.0;
  std::uint64_t seed = 1;
  bool periodic = false;
  std::string curves;

  auto* evolve = app.add_subcommand("evolve", "apply T_t = exp(-tL) to a state");
  evolve->add_option("--generator", generator, "generator JSON {dim, jumps}")->required();
  evolve->add_option("--state", state, "density matrix JSON")->required();
  evolve->add_option("--t", t, "time (>= 0)");
  evolve->add_option("--out", out);

  auto* fixedpoint = app.add_subcommand("fixedpoint", "orthonormal basis of the fixed-point algebra");
  fixedpoint->add_option("--generator", generator)->required();
  fixedpoint->add_option("--out", out);

  auto* decay = app.add_subcommand("decay", "relative entropy and Fisher information along the flow");
  decay->add_option("--generator", generator)->required();
  decay->add_option("--state", state)->required();
  decay->add_option("--t-max", t_max);
  decay->add_option("--points", points);
  decay->add_option("--out", out, "CSV path (stdout JSON when empty)");

  auto* mlsi_cmd = app.add_subcommand("mlsi", "upper estimate of the MLSI constant with an ancilla");
  mlsi_cmd->add_option("--generator", generator)->required();
  mlsi_cmd->add_option("--ancilla", ancilla);
  mlsi_cmd->add_option("--samples", samples);
  mlsi_cmd->add_option("--seed", seed);
  mlsi_cmd->add_option("--out", out);

  auto* diameter = app.add_subcommand("diameter", "Carnot-Caratheodory diameter upper estimate");
  diameter->add_option("--config", config, "system JSON")->required();
  diameter->add_option("--targets", targets, "number of Haar targets");
  diameter->add_option("--segments", segments);
  diameter->add_option("--seed", seed);
  diameter->add_option("--out", out);

  auto* design_cmd = app.add_subcommand("design", "finite averaging design for the Haar twirl");
  design_cmd->add_option("--rep", config, "system JSON")->required();
  design_cmd->add_option("--pool", pool);
  design_cmd->add_option("--seed", seed);
  design_cmd->add_option("--out", out);

  auto* interval_cmd = app.add_subcommand("interval", "weighted-interval constants");
  interval_cmd->add_option("--density", density, "density expression in x (parameter n)");
  interval_cmd->add_option("--n", n_param);
  interval_cmd->add_option("--grid", grid);
  interval_cmd->add_flag("--periodic", periodic);
  interval_cmd->add_option("--matrix-dim", matrix_dim);
  interval_cmd->add_option("--curvature-k", periodic_k, "also run the curvature criterion with this k");
  interval_cmd->add_option("--seed", seed);
  interval_cmd->add_option("--out", out);

  auto* pipeline = app.add_subcommand("pipeline", "end-to-end bound report");
  pipeline->add_option("--config", config)->required();
  auto* seed_opt = pipeline->add_option("--seed", seed);
  pipeline->add_option("--out", out);
  pipeline->add_option("--emit-curves", curves, "directory for per-state decay CSVs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evolve) {
      const auto gen = lindblad::generator_from_json(io::read_json(generator));
      emit(io::matrix_to_json(gen.evolve(load_state(state), t).matrix()), out);
    } else if (*fixedpoint) {
      const auto gen = lindblad::generator_from_json(io::read_json(generator));
      emit(fixedpoint::basis_to_json(fixedpoint::commutant_basis(gen)), out);
    } else if (*decay) {
      const auto gen = lindblad::generator_from_json(io::read_json(generator));
      const auto basis = fixedpoint::commutant_basis(gen);
      const auto c = entropy::decay_curve(gen, basis, load_state(state), time_grid(t_max, points));
      if (out.empty()) {
        emit({{"t", c.times}, {"relative_entropy", c.entropies}, {"fisher", c.fisher}}, "");
      } else {
        write_curve_csv(out, c);
      }
    } else if (*mlsi_cmd) {
      const auto gen = lindblad::generator_from_json(io::read_json(generator));
      mlsi::MlsiOptions o;
      o.n_samples = samples;
      o.seed = seed;
      emit(mlsi::estimate_mlsi(gen, ancilla, o).to_json(), out);
    } else if (*diameter) {
      const auto sys = liegroup::system_from_json(io::read_json(config));
      ccgeom::CcOptions o;
      o.segments = segments;
      o.seed = seed;
      emit(ccgeom::cc_diameter(sys.horizontal, targets, o).to_json(), out);
    } else if (*design_cmd) {
      const auto sys = liegroup::system_from_json(io::read_json(config));
      design::DesignOptions o;
      o.pool_size = pool;
      o.seed = seed;
      emit(design::find_design(sys.rep, o).to_json(), out);
    } else if (*interval_cmd) {
      const auto expr = interval::DensityExpr::parse(density, {{"n", n_param}});
      const auto w = interval::WeightedInterval::build([&](double x) { return expr(x); }, grid, periodic);
      interval::IntervalMlsiOptions o;
      o.seed = seed;
      io::json j = interval::interval_mlsi_estimate(w, matrix_dim, o).to_json();
      j["density"] = density;
      if (periodic_k > 0.0) {
        const auto c = interval::curvature_lower_bound(expr, periodic_k);
        j["curvature"] = {{"k", c.k},         {"holds", c.holds},         {"a", c.a},
                          {"argmin", c.argmin}, {"ricci_min", c.ricci_min}, {"bound_closed", c.bound_closed},
                          {"bound_open", c.bound_open}};
      }
      emit(j, out);
    } else if (*pipeline) {
      const auto j = io::read_json(config);
      const auto sys = liegroup::system_from_json(j);
      auto o = bound::PipelineOptions::from_json(j);
      if (seed_opt->count() > 0) o.seed = seed;
      const auto report = bound::full_pipeline(sys, o);
      emit(report.to_json(), out);
      if (!curves.empty()) {
        fs::create_directories(curves);
        const auto gen = lindblad::LindbladGenerator::build(liegroup::transfer_lindbladian(sys.rep, sys.horizontal));
        const auto basis = fixedpoint::commutant_basis(gen);
        const auto states = bound::decay_states(gen.dim(), o.decay_states, random::derive_seed(o.seed, 201));
        const auto times = bound::decay_times(report.gap, o.decay_times);
        for (std::size_t k = 0; k < states.size(); ++k) {
          write_curve_csv(fs::path(curves) / ("state_" + std::to_string(k) + ".csv"),
                          entropy::decay_curve(gen, basis, states[k], times));
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "clsi-lab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
