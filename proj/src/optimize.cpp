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

#include "clsi/optimize.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace clsi::opt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, const RealVector& x, RealVector* grad) {
  try {
    const double v = f(x, grad);
    if (!std::isfinite(v)) return kInf;
    if (grad != nullptr && !grad->allFinite()) return kInf;
    return v;
  } catch (const std::exception&) {
    return kInf;
  }
}

}  // namespace

OptimizeResult minimize_lbfgs(const Objective& f, RealVector x0, const LbfgsOptions& options) {
  OptimizeResult res;
  res.x = std::move(x0);
  RealVector g(res.x.size());
  res.value = safe_eval(f, res.x, &g);
  if (!std::isfinite(res.value)) return res;

  std::deque<RealVector> s_hist;
  std::deque<RealVector> y_hist;
  int stall = 0;

  for (int it = 0; it < options.max_iterations; ++it) {
    res.iterations = it + 1;
    if (g.lpNorm<Eigen::Infinity>() <= options.gradient_tol) {
      res.converged = true;
      break;
    }

    // Two-loop recursion.
    RealVector q = g;
    std::vector<double> alpha(s_hist.size());
    for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
      const double rho = 1.0 / y_hist[k].dot(s_hist[k]);
      alpha[k] = rho * s_hist[k].dot(q);
      q -= alpha[k] * y_hist[k];
    }
    if (!s_hist.empty()) {
      q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    } else {
      q *= 1.0 / std::max(1.0, g.norm());
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double rho = 1.0 / y_hist[k].dot(s_hist[k]);
      const double beta = rho * y_hist[k].dot(q);
      q += (alpha[k] - beta) * s_hist[k];
    }
    RealVector dir = -q;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      dir = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
    }

    // Armijo backtracking.
    double step = 1.0;
    RealVector x_new;
    RealVector g_new(g.size());
    double f_new = kInf;
    bool accepted = false;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      x_new = res.x + step * dir;
      f_new = safe_eval(f, x_new, &g_new);
      if (f_new <= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = s_hist.empty();
      if (!s_hist.empty()) {
        // Retry once along steepest descent before giving up.
        s_hist.clear();
        y_hist.clear();
        continue;
      }
      break;
    }

    const RealVector s = x_new - res.x;
    const RealVector y = g_new - g;
    if (y.dot(s) > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      if (static_cast<int>(s_hist.size()) > options.history) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }

    const double change = std::abs(res.value - f_new) / std::max(1.0, std::abs(res.value));
    res.x = std::move(x_new);
    res.value = f_new;
    g = g_new;
    stall = change < options.relative_tol ? stall + 1 : 0;
    if (stall >= options.stall_iterations) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Objective with_central_differences(ScalarObjective f, double step) {
  return [f = std::move(f), step](const RealVector& x, RealVector* grad) {
    const double v = f(x);
    if (grad != nullptr) {
      grad->resize(x.size());
      RealVector xp = x;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = step * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        const double fp = f(xp);
        xp(i) = x(i) - h;
        const double fm = f(xp);
        xp(i) = x(i);
        (*grad)(i) = (fp - fm) / (2.0 * h);
      }
    }
    return v;
  };
}

}  // namespace clsi::opt
