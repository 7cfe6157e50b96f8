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

// Compact groups SU(2) and T^d with their Lie algebras, unitary
// representations and horizontal (sub-Riemannian) direction sets.
//
// Algebra conventions:
//   su(2): basis e_k = -i sigma_k / 2, <A, B> = -2 tr(AB), [e_1, e_2] = e_3.
//   t^d:   basis e_k = i E_kk (d x d), <A, B> = -tr(AB).
// Both bases are orthonormal. Algebra elements are handled as real
// coordinate vectors in these bases.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clsi/json_io.hpp"
#include "clsi/linalg.hpp"
#include "clsi/random.hpp"

namespace clsi::liegroup {

enum class GroupKind { SU2, Torus };

class LieAlgebra {
 public:
  static LieAlgebra su2();
  static LieAlgebra torus(int d);

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Size of the defining representation (2 for SU(2), d for T^d).
  int defining_dim() const { return kind_ == GroupKind::SU2 ? 2 : dim_; }
  std::string name() const;

  // Basis element e_k in the defining representation.
  ComplexMatrix basis(int k) const;
  ComplexMatrix element(const RealVector& coords) const;
  RealVector coordinates(const ComplexMatrix& a) const;
  double inner(const ComplexMatrix& a, const ComplexMatrix& b) const;
  RealVector bracket(const RealVector& a, const RealVector& b) const;

  // exp in the defining representation (closed forms).
  ComplexMatrix exp(const RealVector& coords) const;

  // Haar-random group element, returned as algebra coordinates c with
  // exp(c) Haar distributed (SU(2): uniform on S^3; T^d: uniform angles).
  RealVector haar_coordinates(random::Rng& rng) const;

 private:
  GroupKind kind_ = GroupKind::SU2;
  int dim_ = 3;
};

// Unitary representation given by the images of the algebra basis,
// phi(e_k) anti-Hermitian n x n.
class Representation {
 public:
  Representation(LieAlgebra algebra, std::vector<ComplexMatrix> images);

  const LieAlgebra& algebra() const { return algebra_; }
  int dim() const { return n_; }
  const std::vector<ComplexMatrix>& images() const { return images_; }

  ComplexMatrix phi(const RealVector& coords) const;
  // u(exp(A)) = exp(phi(A)).
  ComplexMatrix group(const RealVector& coords) const;

  // max_{k,l} ||phi([e_k, e_l]) - [phi(e_k), phi(e_l)]||_inf
  double homomorphism_residual() const;

 private:
  LieAlgebra algebra_;
  int n_ = 0;
  std::vector<ComplexMatrix> images_;
};

// Spin-j representation of su(2), phi(e_k) = -i J_k. InvalidInput unless 2j is
// a nonnegative integer.
Representation su2_spin_representation(double j);
// Torus representation with integer weights W (n x d): phi(e_k) = i diag(W(:, k)).
Representation torus_representation(const Eigen::MatrixXi& weights);
Representation direct_sum(const Representation& a, const Representation& b);
Representation tensor_product(const Representation& a, const Representation& b);

// Angular momentum matrices J_x, J_y, J_z for spin j.
std::vector<ComplexMatrix> angular_momentum(double j);

struct HormanderResult {
  bool is_hormander = false;
  int depth = 0;  // first bracket depth at which the span is the whole algebra
};

// Horizontal directions X_1..X_s given as algebra coordinates. The geometry
// works in a Gram-orthonormalized frame of the same span; basis_constant is
// the smallest eigenvalue of the Gram matrix of the given directions.
class HorizontalSystem {
 public:
  HorizontalSystem(LieAlgebra algebra, std::vector<RealVector> directions);

  const LieAlgebra& algebra() const { return algebra_; }
  int size() const { return static_cast<int>(directions_.size()); }
  const std::vector<RealVector>& directions() const { return directions_; }
  const std::vector<RealVector>& orthonormal() const { return orthonormal_; }
  bool is_orthonormal() const { return orthonormal_input_; }
  double basis_constant() const { return basis_constant_; }

  // Orthonormal directions in the defining representation.
  std::vector<ComplexMatrix> orthonormal_matrices() const;

 private:
  LieAlgebra algebra_;
  std::vector<RealVector> directions_;
  std::vector<RealVector> orthonormal_;
  bool orthonormal_input_ = false;
  double basis_constant_ = 1.0;
};

HormanderResult hormander_check(const HorizontalSystem& h, int max_depth = 8);

// a_k = -i phi(X_k) for the given directions.
std::vector<linalg::HermitianOperator> transfer_lindbladian(const Representation& rep,
                                                            const HorizontalSystem& h);

// max over samples of the finite-difference mismatch
// d/dt u(exp(tX_k) g)^dag x u(exp(tX_k) g) |_{t=0}  vs  -i u(g)^dag [a_k, x] u(g).
double intertwining_residual(const Representation& rep, const HorizontalSystem& h, int samples,
                             std::uint64_t seed);

// Average of u(g)^dag x u(g) over Haar quadrature: Monte Carlo on S^3 for SU(2)
// (n_quad samples), product grid with n_quad nodes per axis for T^d.
ComplexMatrix haar_twirl(const Representation& rep, const ComplexMatrix& x, int n_quad,
                         std::uint64_t seed);

// System config: {"group":"su2","spin":1,"directions":["X","Y"]} or
// {"group":"torus","d":2,"weights":[[1,0],[0,1]],"directions":[[1,0]]}.
// "spin" may also be a list (direct sum) and "tensor" a list of spins.
struct SystemConfig {
  Representation rep;
  HorizontalSystem horizontal;
  io::json source;
};

SystemConfig system_from_json(const io::json& j);

}  // namespace clsi::liegroup
