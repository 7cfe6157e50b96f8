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

#include "clsi/json_io.hpp"
#include "clsi/lindblad.hpp"

namespace clsi::fixedpoint {

// Orthonormal (Hilbert-Schmidt) basis of the commutant {a_1, ..., a_s}', which
// is the fixed-point algebra of the symmetric semigroup.
class CommutantBasis {
 public:
  int dim() const { return n_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<ComplexMatrix>& elements() const { return basis_; }

  // E_N(x) = sum_i b_i tr(b_i^dag x).
  ComplexMatrix expectation(const ComplexMatrix& x) const;
  DensityOperator expectation(const DensityOperator& rho) const;

  // Projection as an n^2 x n^2 superoperator.
  linalg::Superoperator projector() const;

 private:
  friend CommutantBasis commutant_basis(std::span<const linalg::HermitianOperator>, int);
  int n_ = 0;
  std::vector<ComplexMatrix> basis_;
};

// Kernel of sum_k ad_{a_k}^dag ad_{a_k}. Eigenvalues at or below
// 1e-9 max(1, ||K||) are zero; AmbiguityError when an eigenvalue sits within a
// factor 1e3 of that threshold on either side.
CommutantBasis commutant_basis(std::span<const linalg::HermitianOperator> jumps, int dim);
CommutantBasis commutant_basis(const lindblad::LindbladGenerator& gen);

// max over samples of ||T_{t_max}(x) - E_N(x)||_inf. Requires t_max >= 20/gap;
// throws NumericalError when the deviation exceeds 1e-6.
double check_expectation_limit(const lindblad::LindbladGenerator& gen, const CommutantBasis& basis,
                               const std::vector<ComplexMatrix>& samples, double t_max);

io::json basis_to_json(const CommutantBasis& basis);

}  // namespace clsi::fixedpoint
