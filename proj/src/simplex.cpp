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

#include "clsi/simplex.hpp"

#include <cmath>
#include <limits>

#include "clsi/errors.hpp"

namespace clsi::lp {

namespace {

constexpr double kPivotTol = 1e-11;

void pivot(Eigen::MatrixXd& t, int row, int col) {
  t.row(row) /= t(row, col);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
  }
}

}  // namespace

FeasibilityResult find_feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol,
                                      int max_pivots) {
  if (a.rows() != b.size()) throw DimensionError("find_feasible_point: rhs size");
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());

  // Tableau [A I b] with the phase-1 cost row last; rows flipped so b >= 0.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  for (int i = 0; i < m; ++i) {
    const double sgn = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sgn * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sgn * b(i);
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  // Reduced costs of the phase-1 objective sum(artificials).
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, n + i) = 0.0;

  FeasibilityResult res;
  const double scale = std::max(1.0, b.lpNorm<1>());
  while (true) {
    if (-t(m, n + m) <= 1e-3 * tol * scale) break;
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > kPivotTol) {
        const double ratio = t(i, n + m) / t(i, enter);
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1
    pivot(t, leave, enter);
    basis[leave] = enter;
    if (++res.pivots > max_pivots) throw NumericalError("find_feasible_point: pivot budget exhausted");
  }
  res.infeasibility = std::max(0.0, -t(m, n + m));
  res.feasible = res.infeasibility <= tol * scale;

  // Drive zero-valued artificials out of the basis where possible; rows where
  // no structural pivot exists are redundant.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int col = -1;
    double mag = 1e-9;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > mag) {
        mag = std::abs(t(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      pivot(t, i, col);
      basis[i] = col;
    }
  }

  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) {
      res.x(basis[i]) = std::max(0.0, t(i, n + m));
      res.basis.push_back(basis[i]);
    }
  }
  return res;
}

}  // namespace clsi::lp
