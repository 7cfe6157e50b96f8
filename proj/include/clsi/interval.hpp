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

// Weighted unit interval: discretized weighted Laplacian, (matrix-valued)
// modified log-Sobolev ratios, and the curvature / change-of-measure /
// growth-order lower bounds for interval constants.
//
// Discretization: cell-centred grid x_i = (i + 1/2)/N, so densities that
// vanish at 0 are never evaluated there. delta is the forward difference
// (f_{i+1} - f_i) N on edges between neighbours (plus the wrap-around edge in
// the periodic case, reflecting ends otherwise). With point masses mu_i and
// edge masses mu_e = (mu_i + mu_{i+1})/2, Delta_mu = delta^* delta is the
// mu-adjoint composite, i.e. <f, Delta_mu g>_mu = sum_e mu_e (delta f)_e (delta g)_e.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "clsi/density_expr.hpp"
#include "clsi/json_io.hpp"
#include "clsi/linalg.hpp"

namespace clsi::interval {

class WeightedInterval {
 public:
  // InvalidInput for N < 16 or a density that is not positive and finite on
  // the grid.
  static WeightedInterval build(const std::function<double(double)>& h, int n, bool periodic);
  static WeightedInterval from_samples(const RealVector& h, bool periodic);

  int size() const { return static_cast<int>(x_.size()); }
  bool periodic() const { return periodic_; }
  const RealVector& grid() const { return x_; }
  const RealVector& density() const { return h_; }
  // Point masses mu_i (sum 1).
  const RealVector& weights() const { return w_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // Edge masses times N^2, so the Dirichlet form is sum_e c_e (f_j - f_i)^2.
  const RealVector& edge_conductance() const { return c_; }

  Eigen::MatrixXd laplacian() const;
  RealVector apply_laplacian(const RealVector& f) const;

  // ||W L - (W L)^T||_max / ||W L||_max with W = diag(mu).
  double self_adjointness_residual() const;

  // Eigenvalues of Delta_mu (ascending) and mu-orthonormal eigenvectors.
  RealVector spectrum() const;
  std::pair<RealVector, Eigen::MatrixXd> eigenpairs() const;
  double spectral_gap() const;

 private:
  bool periodic_ = false;
  RealVector x_, h_, w_, c_;
  std::vector<std::pair<int, int>> edges_;
};

// Grid function with values in positive d x d matrices.
using MatrixFunction = std::vector<ComplexMatrix>;

// sum_i mu_i tr(f_i log f_i - f_i log E_mu f)
double interval_entropy(const WeightedInterval& w, const MatrixFunction& f);
// <Delta_mu f, log f>_mu = sum_e c_e tr((f_j - f_i)(log f_j - log f_i)), the
// discrete form of int tr(f' J^log_f f') dmu.
double interval_fisher(const WeightedInterval& w, const MatrixFunction& f);
// I / (2 D); NearFixedPointError when D <= 1e-14.
double interval_mlsi_ratio(const WeightedInterval& w, const MatrixFunction& f);

struct IntervalMlsiOptions {
  int samples = 24;
  int refine_count = 4;
  int opt_budget = 300;
  std::uint64_t seed = 5;
};

struct IntervalMlsiEstimate {
  double lambda_est = 0.0;        // inf I/(2D) over the search
  double linearized_ratio = 0.0;  // I/D at f = 1 + eps phi_1 (approaches 2 gap)
  double gap = 0.0;
  int matrix_dim = 1;
  int grid = 0;
  bool periodic = false;
  int samples_used = 0;
  int optimizer_iterations = 0;
  std::string convention = "2D";
  io::json to_json() const;
};

// Minimizes the ratio over f = exp(H) with H a Hermitian grid function
// (analytic gradients, L-BFGS). For d > 1 the scalar search is included through
// the exact embedding f -> f I_d, so the result never exceeds the d = 1 value.
IntervalMlsiEstimate interval_mlsi_estimate(const WeightedInterval& w, int matrix_dim,
                                            const IntervalMlsiOptions& options = {});

struct CurvatureCheck {
  bool holds = false;
  double k = 0.0;
  double a = 0.0;           // min over the grid of k f^2 - f'' f - (f')^2
  double argmin = 0.0;
  double ricci_min = 0.0;   // min of (k x^2 - log f)'' = 2k + ((f')^2 - f f'')/f^2
  double bound_closed = 0.0;  // 2 e^{-k} when holds
  double bound_open = 0.0;    // (2 e^k)^{-1} when holds
  bool window_shrunk = false;
};

// Evaluates on the open interval (cell centres of a grid of the given size).
CurvatureCheck curvature_lower_bound(const DensityExpr& f, double k, int grid = 4096);

struct BakryEmeryCheck {
  double kappa_min = 0.0;  // min of (-log rho)'' on (0, 1]
  double argmin = 0.0;
  bool window_shrunk = false;
};

BakryEmeryCheck bakry_emery_check(const DensityExpr& rho, int grid = 4096);

struct MeasureComparison {
  double ratio_inf = 0.0;  // of dnu/dmu (normalizations included)
  double ratio_sup = 0.0;
  double factor = 0.0;     // ratio_inf / ratio_sup
  double clsi_nu = 0.0;
  double clsi_mu_bound = 0.0;
  bool support_restricted = false;  // a density vanished and limits were used
};

// clsi_mu >= clsi_nu inf(dnu/dmu) / sup(dnu/dmu) on [0, 1].
MeasureComparison change_of_measure_bound(const DensityExpr& mu, const DensityExpr& nu, double clsi_nu,
                                          int grid = 4096);

// Lower bound for d mu = x^{n-1}/n dx through the modified Gaussian
// nu^n = x^{n-1} e^{-x^2/2} / a_n.
struct ModifiedGaussianReport {
  int n = 0;
  double kappa_min = 0.0;      // curvature of nu^n
  double clsi_nu = 2.0;        // curvature >= 1
  double factor = 0.0;         // e^{-1/2}
  double bound_closed = 0.0;   // 2 e^{-1/2}
  double bound_open = 0.0;     // (2 e^{1/2})^{-1}
  io::json to_json() const;
};

ModifiedGaussianReport modified_gaussian_bound(int n, int grid = 4096);

struct GrowthOrderBound {
  bool positive = false;
  double sup_gprime = 0.0;
  double sup_gprime_sq = 0.0;
  double argmax = 0.0;
  double bound = 0.0;  // 2 / sup_gprime_sq, open interval
};

// Density h normalized to a probability with c1 x^alpha <= h <= c2 beta x^{beta-1}.
// InvalidInput unless 0 <= alpha < beta, beta >= 1, c1, c2 > 0.
GrowthOrderBound growth_order_bound(double alpha, double beta, double c1, double c2);

}  // namespace clsi::interval
