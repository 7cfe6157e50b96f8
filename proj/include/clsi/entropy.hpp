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

#pragma once

#include <vector>

#include "clsi/fixedpoint.hpp"
#include "clsi/json_io.hpp"
#include "clsi/lindblad.hpp"

namespace clsi::entropy {

// Relative entropy value; +infinity is a separate state rather than a float.
class Divergence {
 public:
  static Divergence finite(double v) { return Divergence(v, true); }
  static Divergence infinite() { return Divergence(0.0, false); }

  bool is_finite() const { return finite_; }
  // Throws DomainError when infinite.
  double value() const;
  // Finite value, or std::numeric_limits<double>::infinity().
  double as_double() const;

  io::json to_json() const;

 private:
  Divergence(double v, bool f) : value_(v), finite_(f) {}
  double value_;
  bool finite_;
};

// D(rho||sigma) = tr rho (log rho - log sigma) in nats, computed on supp(sigma).
// Infinite when rho puts weight > 1e-10 on ker(sigma).
Divergence relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

struct FisherInformation {
  double value = 0.0;     // tr(L(rho) log rho)
  double dd_value = 0.0;  // sum_k tr(i[a_k, rho] J^log_rho(i[a_k, rho]))
  bool regularized = false;
};

// Entropy production of rho. Singular rho is replaced by
// (1 - 1e-10) rho + 1e-10 I/n and the result flagged. The two forms must agree
// within 1e-7 max(1, |I|), otherwise NumericalError.
FisherInformation entropy_production(const lindblad::LindbladGenerator& gen,
                                     const DensityOperator& rho);

struct DecayCurve {
  std::vector<double> times;
  std::vector<double> entropies;  // D(T_t rho || E_N rho)
  std::vector<double> fisher;     // I(T_t rho)
};

DecayCurve decay_curve(const lindblad::LindbladGenerator& gen, const fixedpoint::CommutantBasis& basis,
                       const DensityOperator& rho, const std::vector<double>& times);

struct DeBruijnResidual {
  double residual = 0.0;
  bool cancellation_warning = false;  // h below 1e-5
};

// |(D(t+h) - D(t-h)) / 2h + I(T_t rho)|, requires t >= h.
DeBruijnResidual de_bruijn_residual(const lindblad::LindbladGenerator& gen,
                                    const fixedpoint::CommutantBasis& basis,
                                    const DensityOperator& rho, double t, double h);

}  // namespace clsi::entropy
