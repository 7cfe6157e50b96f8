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

#include "clsi/bound.hpp"

#include <cmath>
#include <sstream>

#include "clsi/errors.hpp"
#include "clsi/fixedpoint.hpp"
#include "clsi/lindblad.hpp"
#include "clsi/random.hpp"

namespace clsi::bound {

namespace {

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

TheoremBound theorem_bound(int s, int m, double d_X, double C) {
  if (s <= 0 || m <= 0 || !(d_X > 0.0) || !(C > 0.0)) {
    throw InvalidInput("theorem_bound: s, m, d_X and C must be positive");
  }
  const double base = static_cast<double>(s) * m * d_X;
  return {C / (base * (d_X + 1.0) * (d_X + 1.0)), C / (base * (1.0 + m * d_X) * (1.0 + m * d_X))};
}

IntervalConstant uniform_interval_constant(int grid, const interval::IntervalMlsiOptions& options) {
  const auto w = interval::WeightedInterval::build([](double) { return 1.0; }, grid, true);
  IntervalConstant c;
  c.grid = grid;
  c.closed_reference = 4.0 * M_PI * M_PI;
  c.closed_estimate = interval::interval_mlsi_estimate(w, 1, options).lambda_est;
  c.value = 0.25 * std::min(c.closed_reference, c.closed_estimate);
  return c;
}

PipelineOptions PipelineOptions::from_json(const io::json& j) {
  PipelineOptions o;
  try {
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("C")) o.C = j.at("C").get<double>();
    if (j.contains("diameter_targets")) o.diameter_targets = j.at("diameter_targets").get<int>();
    if (j.contains("max_ancilla")) o.max_ancilla = j.at("max_ancilla").get<int>();
    if (j.contains("decay_states")) o.decay_states = j.at("decay_states").get<int>();
    if (j.contains("interval_grid")) o.interval_grid = j.at("interval_grid").get<int>();
    if (j.contains("mlsi_samples")) o.mlsi.n_samples = j.at("mlsi_samples").get<int>();
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("pipeline options: ") + e.what());
  }
  if (o.max_ancilla < 1 || o.decay_states < 0 || o.diameter_targets < 0) {
    throw ConfigError("pipeline options: counts must be nonnegative and max_ancilla >= 1");
  }
  return o;
}

std::vector<DensityOperator> decay_states(int dim, int count, std::uint64_t seed) {
  std::vector<DensityOperator> out;
  for (int k = 0; k < count; ++k) {
    random::Rng rng(random::derive_seed(seed, static_cast<std::uint64_t>(k)));
    // Mostly full rank, every fourth state of rank 1 or 2.
    const int rank = k % 4 == 3 ? 1 + k % 2 : dim;
    out.push_back(random::hs_state(dim, rng, std::min(rank, dim)));
  }
  return out;
}

std::vector<double> decay_times(double gap, int count) {
  std::vector<double> t;
  for (int k = 0; k < count; ++k) {
    const double u = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    t.push_back(0.01 * std::pow(2000.0, u) / gap);
  }
  return t;
}

io::json BoundReport::to_json() const {
  io::json j;
  j["schema_version"] = 1;
  j["name"] = name;
  j["convention"] = "2D";
  j["s"] = s;
  j["m"] = m;
  j["d_X"] = d_X;
  j["C_interval"] = C_interval;
  j["bound_stated"] = bound_stated;
  j["bound_proof"] = bound_proof;
  j["lambda_est"] = lambda_est;
  j["gap"] = gap;
  j["hormander_depth"] = hormander_depth;
  j["basis_constant"] = basis_constant;
  j["flags"] = {{"proof_le_stated", proof_le_stated},
                {"proof_le_lambda", proof_le_lambda},
                {"stated_le_lambda", stated_le_lambda},
                {"proof_le_gap", proof_le_gap},
                {"zero_violations", zero_violations}};
  j["ancillas"] = io::json::array();
  for (const auto& a : ancillas) {
    j["ancillas"].push_back({{"ancilla_dim", a.ancilla_dim},
                             {"estimate", a.estimate.to_json()},
                             {"decay", a.decay.to_json()},
                             {"zero_violations", a.zero_violations}});
  }
  j["artifacts"] = artifacts;
  return j;
}

BoundReport full_pipeline(const liegroup::SystemConfig& system, const PipelineOptions& options) {
  BoundReport rep;
  rep.name = system.source.value("name", std::string("system"));
  const auto& h = system.horizontal;
  rep.s = h.size();
  rep.basis_constant = h.basis_constant();

  const auto jumps = stage("transfer", [&] {
    const double res = liegroup::intertwining_residual(system.rep, h, 10, options.seed);
    if (res > 1e-6) {
      std::ostringstream os;
      os << "intertwining residual " << res;
      throw NumericalError(os.str());
    }
    rep.artifacts["transfer"] = {{"intertwining_residual", res}};
    return liegroup::transfer_lindbladian(system.rep, h);
  });

  const auto gen = stage("generator", [&] {
    auto g = lindblad::LindbladGenerator::build(jumps);
    rep.artifacts["generator"] = lindblad::generator_to_json(g);
    return g;
  });
  rep.gap = stage("generator", [&] { return gen.spectral_gap(); });

  const auto basis = stage("fixedpoint", [&] {
    auto b = fixedpoint::commutant_basis(gen);
    rep.artifacts["fixedpoint"] = fixedpoint::basis_to_json(b);
    return b;
  });

  const auto twirl = stage("design", [&] {
    auto t = design::twirl_superoperator(system.rep);
    const double mismatch = linalg::max_abs(t.matrix - basis.projector().matrix);
    if (mismatch > 1e-8) {
      std::ostringstream os;
      os << "fixed-point projection differs from the Haar twirl by " << mismatch;
      throw NumericalError(os.str());
    }
    return t;
  });
  const auto des = stage("design", [&] {
    design::DesignOptions o = options.design;
    o.seed = random::derive_seed(options.seed, 11);
    return design::find_design(system.rep, twirl, o);
  });
  rep.m = des.size();
  rep.artifacts["design"] = des.to_json();

  const auto diam = stage("diameter", [&] {
    const auto hc = liegroup::hormander_check(h);
    if (!hc.is_hormander) throw InvalidInput("directions are not bracket generating");
    rep.hormander_depth = hc.depth;
    ccgeom::CcOptions o = options.cc;
    o.seed = random::derive_seed(options.seed, 13);
    return ccgeom::cc_diameter(h, options.diameter_targets, o);
  });
  rep.d_X = diam.d_X;
  rep.artifacts["diameter"] = diam.to_json();

  stage("interval", [&] {
    if (options.C > 0.0) {
      rep.C_interval = options.C;
      rep.artifacts["interval"] = {{"C", options.C}, {"source", "config"}};
    } else {
      const auto c = uniform_interval_constant(options.interval_grid, options.interval);
      rep.C_interval = c.value;
      rep.artifacts["interval"] = {{"C", c.value},
                                   {"source", "uniform measure, open interval"},
                                   {"closed_estimate", c.closed_estimate},
                                   {"closed_reference", c.closed_reference},
                                   {"grid", c.grid}};
    }
  });

  stage("bounds", [&] {
    const auto b = theorem_bound(rep.s, rep.m, rep.d_X, rep.C_interval);
    rep.bound_stated = b.stated;
    rep.bound_proof = b.proof;
  });

  rep.lambda_est = std::numeric_limits<double>::infinity();
  const int n = gen.dim();
  for (int a = 1; a <= options.max_ancilla; ++a) {
    AncillaResult ar;
    ar.ancilla_dim = a;
    ar.estimate = stage("mlsi", [&] {
      mlsi::MlsiOptions o = options.mlsi;
      o.seed = random::derive_seed(options.seed, 100 + a);
      return mlsi::estimate_mlsi(gen, a, o);
    });
    rep.lambda_est = std::min(rep.lambda_est, ar.estimate.lambda_est);
    ar.decay = stage("decay", [&] {
      const auto amp = a == 1 ? gen : gen.amplify(a);
      const auto amp_basis = a == 1 ? basis : fixedpoint::commutant_basis(amp);
      const auto states = decay_states(n * a, options.decay_states, random::derive_seed(options.seed, 200 + a));
      return mlsi::verify_decay(amp, amp_basis, rep.bound_proof, states,
                                decay_times(rep.gap, options.decay_times));
    });
    ar.zero_violations = ar.decay.max_violation <= options.decay_tolerance;
    rep.ancillas.push_back(std::move(ar));
  }

  rep.proof_le_stated = rep.bound_proof <= rep.bound_stated;
  rep.proof_le_lambda = rep.bound_proof <= rep.lambda_est;
  rep.stated_le_lambda = rep.bound_stated <= rep.lambda_est;
  rep.proof_le_gap = rep.bound_proof <= rep.gap;
  rep.zero_violations = true;
  for (const auto& a : rep.ancillas) rep.zero_violations = rep.zero_violations && a.zero_violations;
  return rep;
}

}  // namespace clsi::bound
