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

// Dense phase-1 simplex for linear feasibility problems {x >= 0 : A x = b}.

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace clsi::lp {

struct FeasibilityResult {
  bool feasible = false;
  Eigen::VectorXd x;
  std::vector<int> basis;  // basic columns of A (artificial columns removed)
  double infeasibility = 0.0;  // optimal phase-1 objective, sum of artificials
  int pivots = 0;
};

// Phase-1 simplex with Bland's rule, so it terminates on degenerate problems.
// The solution is basic: its support has at most rank(A) entries. tol is the
// feasibility tolerance on the phase-1 objective relative to max(1, |b|_1).
FeasibilityResult find_feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                      double tol = 1e-9, int max_pivots = 200000);

}  // namespace clsi::lp
