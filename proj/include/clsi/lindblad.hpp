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

#include <memory>
#include <span>
#include <vector>

#include "clsi/json_io.hpp"
#include "clsi/linalg.hpp"

namespace clsi::lindblad {

using linalg::HermitianOperator;

// Symmetric Lindbladian L(x) = sum_k (a_k^2 x + x a_k^2 - 2 a_k x a_k)
//                            = sum_k [a_k, [a_k, x]]
// with self-adjoint jumps a_k. L is positive on L_2(M_n) and generates the
// unital, trace-preserving, completely positive semigroup T_t = exp(-tL).
//
// The superoperator and its eigendecomposition are computed once at build and
// shared by copies; instances are immutable.
class LindbladGenerator {
 public:
  // Throws DimensionError on mixed jump dimensions, InvalidInput on a
  // non-Hermitian jump, NumericalError if the two algebraic forms disagree.
  static LindbladGenerator build(std::vector<HermitianOperator> jumps, int dim);
  static LindbladGenerator build(std::vector<HermitianOperator> jumps);

  int dim() const { return dim_; }
  std::span<const HermitianOperator> jumps() const { return jumps_; }
  const linalg::Superoperator& superoperator() const { return data_->superop; }
  const linalg::EigenDecomposition& spectrum() const { return data_->spectrum; }

  // Direct evaluation of sum_k (a^2 x + x a^2 - 2 a x a) on an n x n matrix.
  ComplexMatrix apply(const ComplexMatrix& x) const;
  // Sum of double commutators; equal to apply() up to rounding.
  ComplexMatrix apply_double_commutator(const ComplexMatrix& x) const;

  // T_t(x) for any matrix x (Heisenberg and Schrodinger pictures coincide).
  ComplexMatrix evolve_matrix(const ComplexMatrix& x, double t) const;
  // T_t(rho), negative eigenvalues down to -1e-9 clamped and renormalized.
  DensityOperator evolve(const DensityOperator& rho, double t) const;
  // exp(-t S) as a superoperator.
  linalg::Superoperator propagator(double t) const;

  // delta(x) = (i[a_1, x], ..., i[a_s, x]).
  std::vector<ComplexMatrix> derivation(const ComplexMatrix& x) const;

  // Eigenvalues at or below this are treated as zero.
  double zero_threshold() const;
  // Smallest eigenvalue above zero_threshold(); DegenerateGeneratorError if none.
  double spectral_gap() const;
  int kernel_dimension() const;

  // L (x) id_{M_m}: jumps lifted to a_k (x) I_m.
  LindbladGenerator amplify(int m) const;

  // Scaled copy with jumps c * a_k (L scales by c^2).
  LindbladGenerator scaled(double c) const;

 private:
  struct Data {
    linalg::Superoperator superop;
    linalg::EigenDecomposition spectrum;
  };

  int dim_ = 0;
  std::vector<HermitianOperator> jumps_;
  std::vector<ComplexMatrix> squares_;
  std::shared_ptr<const Data> data_;
};

// Generator config JSON: { "dim": n, "jumps": [matrix, ...] }.
LindbladGenerator generator_from_json(const io::json& j);
io::json generator_to_json(const LindbladGenerator& gen);

}  // namespace clsi::lindblad
