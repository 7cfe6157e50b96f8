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

// Dense complex matrix kernel: Hermitian eigendecomposition, spectral
// functional calculus, Daleckii-Krein divided differences and superoperators
// on the column-stacked vectorization of M_n.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace clsi {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

// Largest entry modulus.
double max_abs(const ComplexMatrix& a);

// Self-adjoint matrix. Construction checks ||A - A^dag||_inf <= 1e-12 ||A||_inf
// and stores (A + A^dag)/2 so the stored matrix is exactly Hermitian.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& a);

  // (A + A^dag)/2 without the tolerance check; for values that are Hermitian
  // by construction but carry rounding drift.
  static HermitianOperator hermitian_part(const ComplexMatrix& a);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  struct Unchecked {};
  HermitianOperator(const ComplexMatrix& a, Unchecked);
  ComplexMatrix m_;
};

// A = U diag(values) U^dag, values ascending.
struct EigenDecomposition {
  RealVector values;
  ComplexMatrix vectors;

  ComplexMatrix reconstruct() const;
};

// Cyclic Jacobi for complex Hermitian matrices (100 sweep cap).
EigenDecomposition eigh(const HermitianOperator& a);

// Real scalar function together with its derivative; the derivative feeds the
// diagonal of divided-difference transforms.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static ScalarFunction log();
  static ScalarFunction exp();
  static ScalarFunction identity();
  static ScalarFunction square();
  static ScalarFunction sqrt();
};

// f(A) = U f(Lambda) U^dag. Throws DomainError naming the eigenvalue where f
// is not finite.
HermitianOperator matrix_function(const HermitianOperator& a, const ScalarFunction& f);
HermitianOperator matrix_function(const EigenDecomposition& eig, const ScalarFunction& f);

// Relative gap below which two eigenvalues are merged in divided differences.
inline constexpr double kDegeneracyThreshold = 1e-12;

// (J^f X)_{ij} = X_{ij} (f(l_i) - f(l_j)) / (l_i - l_j) in the eigenbasis of the
// decomposition, with f'(l_i) on the (near) diagonal. No positivity check.
ComplexMatrix divided_difference_transform(const EigenDecomposition& eig,
                                           const ComplexMatrix& x,
                                           const ScalarFunction& f);

// Superoperator acting on vec(x), vec = column stacking: vec(E_ij) = e_{i + j n}.
struct Superoperator {
  int dim = 0;  // n; matrix is n^2 x n^2
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& x) const;
};

ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, int n);
ComplexMatrix matrix_unit(int n, int i, int j);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

// Column (i + j n) of the result is vec(phi(E_ij)). Conjugation x -> a x b maps
// to kron(b^T, a).
Superoperator vectorize_map(const LinearMap& phi, int n);

struct ChoiMatrix {
  ComplexMatrix matrix;  // sum_ij E_ij (x) Phi(E_ij)
  bool hermitian = false;
  double hermiticity_defect = 0.0;
};

ChoiMatrix choi_matrix(const Superoperator& s);

// CP iff the Choi matrix is Hermitian and its eigenvalues are >= -1e-9.
bool is_completely_positive(const Superoperator& s, double tol = 1e-9);

// Hilbert-Schmidt inner product tr(a^dag b).
cd hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli matrices (identity at index 0).
ComplexMatrix pauli(int k);

}  // namespace linalg

// Quantum state: positive semidefinite, unit trace. Carries its eigenbasis.
class DensityOperator {
 public:
  DensityOperator() = default;

  // Validates trace 1 (within 1e-10) and eigenvalues >= -negative_tolerance,
  // clamping the small negatives to zero. With renormalize the trace is divided
  // out first instead of being checked.
  static DensityOperator from_matrix(const ComplexMatrix& rho,
                                     double negative_tolerance = 1e-12,
                                     bool renormalize = false);

  static DensityOperator maximally_mixed(int n);

  const ComplexMatrix& matrix() const { return m_; }
  const linalg::EigenDecomposition& eigen() const { return eig_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double min_eigenvalue() const { return eig_.values(0); }

 private:
  ComplexMatrix m_;
  linalg::EigenDecomposition eig_;
};

namespace linalg {

// Divided-difference transform at a full-rank state; throws RankDeficiencyError
// when the smallest eigenvalue is below 1e-14 times the largest.
HermitianOperator divided_difference_transform(const DensityOperator& sigma,
                                               const HermitianOperator& x,
                                               const ScalarFunction& f);

}  // namespace linalg

}  // namespace clsi
