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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "clsi/errors.hpp"
#include "clsi/fixedpoint.hpp"
#include "clsi/liegroup.hpp"
#include "clsi/lindblad.hpp"
#include "support/oracles.hpp"

using namespace clsi;
using namespace clsi::liegroup;
using linalg::pauli;

namespace {

const cd kI(0.0, 1.0);

HorizontalSystem su2_system(std::initializer_list<int> axes) {
  std::vector<RealVector> d;
  for (int k : axes) d.push_back(RealVector::Unit(3, k));
  return HorizontalSystem(LieAlgebra::su2(), d);
}

}  // namespace

TEST_CASE("su(2) basis conventions") {
  const auto alg = LieAlgebra::su2();
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      CHECK(alg.inner(alg.basis(k), alg.basis(l)) == Catch::Approx(k == l ? 1.0 : 0.0).margin(1e-15));
    }
  }
  CHECK(oracle::max_abs(linalg::commutator(alg.basis(0), alg.basis(1)) - alg.basis(2)) <= 1e-15);
  const RealVector c = (RealVector(3) << 0.3, -1.2, 2.0).finished();
  CHECK(oracle::max_abs(alg.exp(c) - oracle::expm(alg.element(c))) <= 1e-13);
  CHECK((alg.coordinates(alg.element(c)) - c).norm() <= 1e-14);
  // exp(2 pi e_k) = -I
  CHECK(oracle::max_abs(alg.exp(2 * M_PI * RealVector::Unit(3, 0)) + ComplexMatrix::Identity(2, 2)) <= 1e-14);
}

TEST_CASE("spin representations") {
  const auto half = su2_spin_representation(0.5);
  for (int k = 0; k < 3; ++k) {
    CHECK(oracle::max_abs(half.images()[k] - (-0.5 * kI * pauli(k + 1))) <= 1e-15);
  }
  const auto js = angular_momentum(1.0);
  const RealVector ev = oracle::eigenvalues(js[2]);
  CHECK(ev(0) == Catch::Approx(-1.0));
  CHECK(std::abs(ev(1)) <= 1e-15);
  CHECK(ev(2) == Catch::Approx(1.0));
  CHECK(oracle::max_abs(linalg::commutator(js[0], js[1]) - kI * js[2]) <= 1e-12);

  for (double j : {0.5, 1.0, 1.5, 2.0, 3.5}) {
    const auto rep = su2_spin_representation(j);
    CHECK(rep.dim() == static_cast<int>(2 * j + 1));
    CHECK(rep.homomorphism_residual() <= 1e-10);
    // Casimir J^2 = j(j+1) I
    const auto a = angular_momentum(j);
    const ComplexMatrix cas = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    CHECK(oracle::max_abs(cas - j * (j + 1) * ComplexMatrix::Identity(rep.dim(), rep.dim())) <= 1e-12);
  }
  CHECK_THROWS_AS(su2_spin_representation(0.3), InvalidInput);
  CHECK_THROWS_AS(su2_spin_representation(4.0), InvalidInput);
}

TEST_CASE("representation unitarity and composite representations") {
  random::Rng rng(3);
  const auto rep = tensor_product(su2_spin_representation(0.5), su2_spin_representation(1.0));
  CHECK(rep.dim() == 6);
  CHECK(rep.homomorphism_residual() <= 1e-10);
  const auto sum = direct_sum(su2_spin_representation(0.5), su2_spin_representation(1.5));
  CHECK(sum.dim() == 6);
  CHECK(sum.homomorphism_residual() <= 1e-10);
  for (int t = 0; t < 5; ++t) {
    const RealVector c = LieAlgebra::su2().haar_coordinates(rng);
    const ComplexMatrix u = rep.group(c);
    CHECK(oracle::max_abs(u.adjoint() * u - ComplexMatrix::Identity(6, 6)) <= 1e-10);
    CHECK(oracle::max_abs(u - oracle::expm(rep.phi(c))) <= 1e-10);
  }
  // The defining representation reproduces the closed-form exponential.
  const auto half = su2_spin_representation(0.5);
  const RealVector c = LieAlgebra::su2().haar_coordinates(rng);
  CHECK(oracle::max_abs(half.group(c) - LieAlgebra::su2().exp(c)) <= 1e-12);
}

TEST_CASE("Hormander condition") {
  const auto xy = hormander_check(su2_system({0, 1}));
  CHECK(xy.is_hormander);
  CHECK(xy.depth == 2);
  const auto xyz = hormander_check(su2_system({0, 1, 2}));
  CHECK(xyz.is_hormander);
  CHECK(xyz.depth == 1);
  CHECK_FALSE(hormander_check(su2_system({0})).is_hormander);
  const HorizontalSystem t1(LieAlgebra::torus(2), {RealVector::Unit(2, 0)});
  CHECK_FALSE(hormander_check(t1).is_hormander);
  const HorizontalSystem t2(LieAlgebra::torus(2), {RealVector::Unit(2, 0), RealVector::Unit(2, 1)});
  CHECK(hormander_check(t2).is_hormander);
  CHECK(hormander_check(t2).depth == 1);
}

TEST_CASE("non-orthonormal directions report the basis constant") {
  const RealVector x = RealVector::Unit(3, 0);
  const RealVector y = (RealVector(3) << 1.0, 1.0, 0.0).finished();
  const HorizontalSystem h(LieAlgebra::su2(), {x, y});
  CHECK_FALSE(h.is_orthonormal());
  // Gram matrix [[1,1],[1,2]] has smallest eigenvalue (3 - sqrt 5)/2.
  CHECK(h.basis_constant() == Catch::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  CHECK(std::abs(h.orthonormal()[0].dot(h.orthonormal()[1])) <= 1e-15);
  CHECK(su2_system({0, 1}).is_orthonormal());
  CHECK(su2_system({0, 1}).basis_constant() == Catch::Approx(1.0));
  CHECK_THROWS_AS(HorizontalSystem(LieAlgebra::su2(), {x, 2.0 * x}), InvalidInput);
}

TEST_CASE("transferred jumps") {
  const auto half = su2_spin_representation(0.5);
  const auto a = transfer_lindbladian(half, su2_system({0, 1, 2}));
  for (int k = 0; k < 3; ++k) CHECK(oracle::max_abs(a[k].matrix() - (-0.5) * pauli(k + 1)) <= 1e-15);

  Eigen::MatrixXi w(3, 2);
  w << 1, 0, -1, 2, 0, -3;
  const auto rep = torus_representation(w);
  const HorizontalSystem h(LieAlgebra::torus(2), {RealVector::Unit(2, 0), RealVector::Unit(2, 1)});
  const auto t = transfer_lindbladian(rep, h);
  for (int k = 0; k < 2; ++k) {
    const ComplexMatrix expected = w.col(k).cast<double>().cast<cd>().asDiagonal();
    CHECK(oracle::max_abs(t[k].matrix() - expected) <= 1e-15);
  }
}

TEST_CASE("intertwining identity holds on random samples") {
  CHECK(intertwining_residual(su2_spin_representation(1.0), su2_system({0, 1}), 20, 5) <= 1e-8);
  CHECK(intertwining_residual(su2_spin_representation(0.5), su2_system({0, 1, 2}), 20, 6) <= 1e-8);
  Eigen::MatrixXi w(2, 1);
  w << 1, -1;
  const HorizontalSystem h(LieAlgebra::torus(1), {RealVector::Unit(1, 0)});
  CHECK(intertwining_residual(torus_representation(w), h, 20, 7) <= 1e-8);
}

TEST_CASE("transferred generator annihilates the representation commutant") {
  const auto rep = su2_spin_representation(1.0);
  const auto jumps = transfer_lindbladian(rep, su2_system({0, 1}));
  const auto gen = lindblad::LindbladGenerator::build(jumps);
  // Irreducible: the kernel is the scalars.
  CHECK(gen.kernel_dimension() == 1);
  CHECK(oracle::max_abs(gen.apply(ComplexMatrix::Identity(3, 3))) <= 1e-14);
}

TEST_CASE("Haar twirl") {
  const auto half = su2_spin_representation(0.5);
  CHECK(oracle::max_abs(haar_twirl(half, ComplexMatrix::Identity(2, 2), 100, 1) -
                        ComplexMatrix::Identity(2, 2)) <= 1e-12);
  CHECK(oracle::max_abs(haar_twirl(half, pauli(3), 200000, 2)) <= 5e-3);

  Eigen::MatrixXi w(2, 1);
  w << 1, -1;
  const auto trep = torus_representation(w);
  const ComplexMatrix e12 = linalg::matrix_unit(2, 0, 1);
  CHECK(oracle::max_abs(haar_twirl(trep, e12, 8, 0)) <= 1e-14);

  // Torus grid quadrature reproduces the conditional expectation exactly.
  Eigen::MatrixXi w2(3, 2);
  w2 << 1, 0, 0, 1, 1, 1;
  const auto rep2 = torus_representation(w2);
  const HorizontalSystem h2(LieAlgebra::torus(2), {RealVector::Unit(2, 0), RealVector::Unit(2, 1)});
  const auto gen = lindblad::LindbladGenerator::build(transfer_lindbladian(rep2, h2));
  const auto basis = fixedpoint::commutant_basis(gen);
  const ComplexMatrix x = oracle::random_hermitian(3, 4) + kI * oracle::random_hermitian(3, 5);
  CHECK(oracle::max_abs(haar_twirl(rep2, x, 8, 0) - basis.expectation(x)) <= 1e-10);

  // SU(2) Monte Carlo agrees with E_N of the transferred generator.
  const auto rep1 = su2_spin_representation(1.0);
  const auto g1 = lindblad::LindbladGenerator::build(transfer_lindbladian(rep1, su2_system({0, 1})));
  const auto b1 = fixedpoint::commutant_basis(g1);
  const ComplexMatrix y = oracle::random_hermitian(3, 9);
  CHECK(oracle::max_abs(haar_twirl(rep1, y, 100000, 3) - b1.expectation(y)) <= 1e-2);
}

TEST_CASE("system configs") {
  const auto s = system_from_json(io::json::parse(R"({"group":"su2","spin":1,"directions":["X","Y"]})"));
  CHECK(s.rep.dim() == 3);
  CHECK(s.horizontal.size() == 2);
  const auto t = system_from_json(
      io::json::parse(R"({"group":"torus","d":2,"weights":[[1,0],[0,1]],"directions":[[1,0]]})"));
  CHECK(t.rep.dim() == 2);
  CHECK(t.horizontal.algebra().dim() == 2);
  const auto ds = system_from_json(io::json::parse(R"({"group":"su2","spin":[0.5,1],"directions":["X","Y"]})"));
  CHECK(ds.rep.dim() == 5);
  const auto tp = system_from_json(io::json::parse(R"({"group":"su2","tensor":[0.5,0.5],"directions":["X","Y"]})"));
  CHECK(tp.rep.dim() == 4);
  CHECK_THROWS_AS(system_from_json(io::json::parse(R"({"group":"so3","directions":[]})")), ConfigError);
  CHECK_THROWS_AS(system_from_json(io::json::parse(R"({"group":"su2","spin":1,"directions":["W"]})")), ConfigError);
  CHECK_THROWS_AS(system_from_json(io::json::parse(R"({"group":"torus","d":2,"weights":[[1]],"directions":[[1,0]]})")),
                  ConfigError);
}
