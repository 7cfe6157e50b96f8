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

#include "clsi/fixedpoint.hpp"

#include <cmath>
#include <sstream>

#include "clsi/errors.hpp"

namespace clsi::fixedpoint {

using linalg::kron;

namespace {

constexpr double kSeparation = 1e3;

// Modified Gram-Schmidt on vectorized matrices, two passes.
std::vector<ComplexVector> orthonormalize(std::vector<ComplexVector> vs) {
  std::vector<ComplexVector> out;
  for (auto& v : vs) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) v -= q.dot(v) * q;
    }
    const double nrm = v.norm();
    if (nrm > 1e-8) out.push_back(v / nrm);
  }
  return out;
}

}  // namespace

ComplexMatrix CommutantBasis::expectation(const ComplexMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw DimensionError("conditional_expectation: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
  for (const auto& b : basis_) out += b * linalg::hs_inner(b, x);
  return out;
}

DensityOperator CommutantBasis::expectation(const DensityOperator& rho) const {
  ComplexMatrix e = expectation(rho.matrix());
  e = 0.5 * (e + e.adjoint());
  return DensityOperator::from_matrix(e, 1e-9, true);
}

linalg::Superoperator CommutantBasis::projector() const {
  linalg::Superoperator p{n_, ComplexMatrix::Zero(n_ * n_, n_ * n_)};
  for (const auto& b : basis_) {
    const ComplexVector v = linalg::vec(b);
    p.matrix += v * v.adjoint();
  }
  return p;
}

CommutantBasis commutant_basis(std::span<const linalg::HermitianOperator> jumps, int dim) {
  const int n = dim;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix k = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& a : jumps) {
    if (a.dim() != n) throw DimensionError("commutant_basis: jump dimension mismatch");
    const ComplexMatrix ad = kron(id, a.matrix()) - kron(a.matrix().transpose(), id);
    k += ad.adjoint() * ad;
  }
  const auto eig = linalg::eigh(linalg::HermitianOperator::hermitian_part(k));
  const double thr = 1e-9 * std::max(1.0, linalg::max_abs(k));

  std::vector<ComplexVector> kernel;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v > thr / kSeparation && v < thr * kSeparation) {
      std::ostringstream os;
      os << "commutant_basis: eigenvalue " << v << " is not separated from the kernel threshold "
         << thr;
      throw AmbiguityError(os.str());
    }
    if (v <= thr) kernel.push_back(eig.vectors.col(i));
  }

  CommutantBasis out;
  out.n_ = n;
  for (const auto& v : orthonormalize(std::move(kernel))) out.basis_.push_back(linalg::unvec(v, n));
  return out;
}

CommutantBasis commutant_basis(const lindblad::LindbladGenerator& gen) {
  return commutant_basis(gen.jumps(), gen.dim());
}

double check_expectation_limit(const lindblad::LindbladGenerator& gen, const CommutantBasis& basis,
                               const std::vector<ComplexMatrix>& samples, double t_max) {
  if (basis.dim() != gen.dim()) throw DimensionError("check_expectation_limit: dimension mismatch");
  if (basis.size() < gen.dim() * gen.dim()) {
    const double gap = gen.spectral_gap();
    if (t_max < 20.0 / gap) throw InvalidInput("check_expectation_limit: t_max must be >= 20/gap");
  }
  double worst = 0.0;
  for (const auto& x : samples) {
    worst = std::max(worst, linalg::max_abs(gen.evolve_matrix(x, t_max) - basis.expectation(x)));
  }
  if (worst > 1e-6) {
    std::ostringstream os;
    os << "check_expectation_limit: T_t and E_N disagree by " << worst;
    throw NumericalError(os.str());
  }
  return worst;
}

io::json basis_to_json(const CommutantBasis& basis) {
  io::json j;
  j["dim"] = basis.dim();
  j["d"] = basis.size();
  j["basis"] = io::json::array();
  for (const auto& b : basis.elements()) j["basis"].push_back(io::matrix_to_json(b));
  return j;
}

}  // namespace clsi::fixedpoint
