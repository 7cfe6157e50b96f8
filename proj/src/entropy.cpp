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

#include "clsi/entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "clsi/errors.hpp"

namespace clsi::entropy {

namespace {

constexpr double kKernelThreshold = 1e-12;
constexpr double kSupportWeight = 1e-10;
constexpr double kRegularization = 1e-10;

// (1 + r) log(1 + r) - r, accurate near r = 0.
double klein(double r) {
  if (r <= -1.0) return 1.0;
  if (std::abs(r) < 1e-3) {
    return r * r * (0.5 - r * (1.0 / 6.0 - r * (1.0 / 12.0 - r / 20.0)));
  }
  return (1.0 + r) * std::log1p(r) - r;
}

DensityOperator regularize(const DensityOperator& rho, bool& flagged) {
  const auto& ev = rho.eigen().values;
  flagged = ev(0) <= 1e-14 * ev(ev.size() - 1);
  if (!flagged) return rho;
  const int n = rho.dim();
  const ComplexMatrix r = (1.0 - kRegularization) * rho.matrix() +
                          kRegularization * ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  return DensityOperator::from_matrix(r, 1e-12, true);
}

}  // namespace

double Divergence::value() const {
  if (!finite_) throw DomainError("relative entropy is infinite");
  return value_;
}

double Divergence::as_double() const {
  return finite_ ? value_ : std::numeric_limits<double>::infinity();
}

io::json Divergence::to_json() const {
  if (finite_) return value_;
  return "inf";
}

Divergence relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  const auto& re = rho.eigen();
  const auto& se = sigma.eigen();
  // Overlaps P_ij = |<u_i|v_j>|^2 between the two eigenbases. Both rows and
  // columns sum to one, so D = sum_ij P_ij (l_i log(l_i/s_j) - l_i + s_j), a
  // sum of nonnegative terms that stays accurate when rho is close to sigma.
  const Eigen::MatrixXd p = (re.vectors.adjoint() * se.vectors).cwiseAbs2();

  double kernel_weight = 0.0;
  for (Eigen::Index j = 0; j < se.values.size(); ++j) {
    if (se.values(j) > kKernelThreshold) continue;
    for (Eigen::Index i = 0; i < re.values.size(); ++i) kernel_weight += p(i, j) * std::max(re.values(i), 0.0);
  }
  if (kernel_weight > kSupportWeight) return Divergence::infinite();

  double d = 0.0;
  for (Eigen::Index j = 0; j < se.values.size(); ++j) {
    const double s = se.values(j);
    if (s <= kKernelThreshold) continue;
    for (Eigen::Index i = 0; i < re.values.size(); ++i) {
      const double l = std::max(re.values(i), 0.0);
      d += p(i, j) * s * klein(l / s - 1.0);
    }
  }
  return Divergence::finite(std::max(d, 0.0));
}

FisherInformation entropy_production(const lindblad::LindbladGenerator& gen,
                                     const DensityOperator& rho_in) {
  if (rho_in.dim() != gen.dim()) throw DimensionError("entropy_production: dimension mismatch");
  FisherInformation out;
  const DensityOperator rho = regularize(rho_in, out.regularized);

  const auto log_rho = linalg::matrix_function(rho.eigen(), linalg::ScalarFunction::log());
  out.value = (gen.apply(rho.matrix()) * log_rho.matrix()).trace().real();

  double dd = 0.0;
  for (const auto& d : gen.derivation(rho.matrix())) {
    const ComplexMatrix j =
        linalg::divided_difference_transform(rho.eigen(), d, linalg::ScalarFunction::log());
    dd += (d * j).trace().real();
  }
  out.dd_value = dd;

  const double tol = 1e-7 * std::max(1.0, std::abs(out.value));
  if (std::abs(out.value - out.dd_value) > tol) {
    std::ostringstream os;
    os << "entropy_production: trace form " << out.value << " and divided-difference form "
       << out.dd_value << " disagree";
    throw NumericalError(os.str());
  }
  return out;
}

DecayCurve decay_curve(const lindblad::LindbladGenerator& gen, const fixedpoint::CommutantBasis& basis,
                       const DensityOperator& rho, const std::vector<double>& times) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidInput("decay_curve: time grid must be ascending");
  }
  if (!times.empty() && times.front() < 0.0) throw InvalidInput("decay_curve: negative time");
  const DensityOperator target = basis.expectation(rho);
  DecayCurve c;
  c.times = times;
  for (double t : times) {
    const DensityOperator rt = gen.evolve(rho, t);
    c.entropies.push_back(relative_entropy(rt, target).as_double());
    c.fisher.push_back(entropy_production(gen, rt).value);
  }
  return c;
}

DeBruijnResidual de_bruijn_residual(const lindblad::LindbladGenerator& gen,
                                    const fixedpoint::CommutantBasis& basis,
                                    const DensityOperator& rho, double t, double h) {
  if (h <= 0.0 || t < h) throw InvalidInput("de_bruijn_residual: need 0 < h <= t");
  DeBruijnResidual out;
  out.cancellation_warning = h < 1e-5;
  const DensityOperator target = basis.expectation(rho);
  const double dp = relative_entropy(gen.evolve(rho, t + h), target).value();
  const double dm = relative_entropy(gen.evolve(rho, t - h), target).value();
  const double fisher = entropy_production(gen, gen.evolve(rho, t)).value;
  out.residual = std::abs((dp - dm) / (2.0 * h) + fisher);
  return out;
}

}  // namespace clsi::entropy
