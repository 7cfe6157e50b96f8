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

// Upper estimates of modified log-Sobolev constants. Convention throughout:
// lambda = inf I(rho) / (2 D(rho || E_N rho)), so D(T_t rho || E_N rho) decays
// at least like exp(-2 lambda t).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clsi/fixedpoint.hpp"
#include "clsi/json_io.hpp"
#include "clsi/lindblad.hpp"

namespace clsi::mlsi {

// I(rho) / (2 D(rho || E_N rho)); NearFixedPointError when D <= 1e-12.
double mlsi_ratio(const lindblad::LindbladGenerator& gen, const fixedpoint::CommutantBasis& basis,
                  const DensityOperator& rho);

struct MlsiOptions {
  int n_samples = 200;
  int refine_count = 4;     // best samples handed to the local optimizer
  int opt_budget = 60;      // L-BFGS iterations per refinement
  std::uint64_t seed = 7;
  bool include_divisors = true;  // seed with embedded argmins of proper divisor ancillas
};

struct MlsiEstimate {
  double lambda_est = 0.0;        // inf I/(2D) found
  double lambda_factor_free = 0.0;  // same infimum in the lambda D <= I form (2 lambda_est)
  int ancilla_dim = 1;
  DensityOperator argmin_state;
  int samples_used = 0;
  int optimizer_iterations = 0;
  bool converged = false;
  double gap = 0.0;
  std::string convention = "2D";

  io::json to_json() const;
};

// Minimizes the ratio for L (x) id_{M_m}. Deterministic for a fixed seed; the
// result is an upper bound on the true constant.
MlsiEstimate estimate_mlsi(const lindblad::LindbladGenerator& gen, int ancilla_dim,
                           const MlsiOptions& options);

struct DecayVerification {
  double lambda = 0.0;
  double max_violation = 0.0;  // max of D(t) - exp(-2 lambda t) D(0)
  int witness_state = -1;
  double witness_time = 0.0;
  std::string exponent = "2*lambda";

  io::json to_json() const;
};

DecayVerification verify_decay(const lindblad::LindbladGenerator& gen,
                               const fixedpoint::CommutantBasis& basis, double lambda,
                               const std::vector<DensityOperator>& states,
                               const std::vector<double>& times);

}  // namespace clsi::mlsi
