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

// Small dense local optimizer shared by the MLSI, interval and
// sub-Riemannian path searches.

#pragma once

#include <functional>

#include "clsi/linalg.hpp"

namespace clsi::opt {

// Returns f(x); when grad is non-null also writes the gradient. Non-finite
// values (or exceptions) at trial points are treated as +infinity.
using Objective = std::function<double(const RealVector& x, RealVector* grad)>;
using ScalarObjective = std::function<double(const RealVector& x)>;

struct LbfgsOptions {
  int max_iterations = 100;
  int history = 8;
  double gradient_tol = 1e-10;   // on ||g||_inf
  double relative_tol = 1e-12;   // on |f_k - f_{k+1}| / max(1, |f_k|)
  int stall_iterations = 3;      // consecutive iterations below relative_tol
  int max_line_search = 40;
};

struct OptimizeResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

OptimizeResult minimize_lbfgs(const Objective& f, RealVector x0, const LbfgsOptions& options);

// Wraps a value-only function with a central-difference gradient; the step is
// relative, h_i = step * max(1, |x_i|).
Objective with_central_differences(ScalarObjective f, double step = 1e-6);

}  // namespace clsi::opt
