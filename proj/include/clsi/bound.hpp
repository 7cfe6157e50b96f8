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

// CLSI lower bound from (s, m, d_X, C) and the end-to-end pipeline
// representation -> generator -> fixed points -> design -> diameter ->
// interval constant -> bounds -> numerical estimate -> decay check.
//
// Convention: C and all bounds are read in the "2D" convention of the mlsi
// module (D(T_t rho) <= exp(-2 lambda t) D(rho)), the conservative reading,
// so bounds compare directly with lambda_est and feed verify_decay as is.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clsi/ccgeom.hpp"
#include "clsi/design.hpp"
#include "clsi/interval.hpp"
#include "clsi/json_io.hpp"
#include "clsi/liegroup.hpp"
#include "clsi/mlsi.hpp"

namespace clsi::bound {

struct TheoremBound {
  double stated = 0.0;  // C / (s m d_X (d_X + 1)^2)
  double proof = 0.0;   // C / (s m d_X (1 + m d_X)^2)
};

// InvalidInput unless all arguments are positive.
TheoremBound theorem_bound(int s, int m, double d_X, double C);

// Open-interval constant 1/4 min(4 pi^2, estimate on the periodic uniform grid).
struct IntervalConstant {
  double value = 0.0;
  double closed_estimate = 0.0;
  double closed_reference = 0.0;  // 4 pi^2
  int grid = 0;
};

IntervalConstant uniform_interval_constant(int grid, const interval::IntervalMlsiOptions& options);

struct PipelineOptions {
  std::uint64_t seed = 1;
  double C = -1.0;           // positive: use instead of the interval constant
  int interval_grid = 256;
  int diameter_targets = 4;
  int max_ancilla = 4;
  int decay_states = 100;
  int decay_times = 24;      // log-spaced in [0.01, 20] / gap
  double decay_tolerance = 1e-10;
  ccgeom::CcOptions cc;
  design::DesignOptions design;
  mlsi::MlsiOptions mlsi;
  interval::IntervalMlsiOptions interval;

  // Reads "seed", "C", "diameter_targets", "max_ancilla", "decay_states",
  // "interval_grid", "mlsi_samples" from a system config when present.
  static PipelineOptions from_json(const io::json& j);
};

struct AncillaResult {
  int ancilla_dim = 1;
  mlsi::MlsiEstimate estimate;
  mlsi::DecayVerification decay;
  bool zero_violations = false;
};

struct BoundReport {
  std::string name;
  int s = 0;
  int m = 0;  // design size
  double d_X = 0.0;
  double C_interval = 0.0;
  double bound_stated = 0.0;
  double bound_proof = 0.0;
  double lambda_est = 0.0;  // min over ancilla dimensions
  double gap = 0.0;
  int hormander_depth = 0;
  double basis_constant = 1.0;
  std::vector<AncillaResult> ancillas;

  // Consistency flags.
  bool proof_le_stated = false;
  bool proof_le_lambda = false;
  bool stated_le_lambda = false;
  bool proof_le_gap = false;
  bool zero_violations = false;

  io::json artifacts;  // per-stage serialized outputs
  io::json to_json() const;
};

// Stage failures surface as StageError naming the stage.
BoundReport full_pipeline(const liegroup::SystemConfig& system, const PipelineOptions& options);

// Random states used by the decay stage for a given dimension.
std::vector<DensityOperator> decay_states(int dim, int count, std::uint64_t seed);
std::vector<double> decay_times(double gap, int count);

}  // namespace clsi::bound
