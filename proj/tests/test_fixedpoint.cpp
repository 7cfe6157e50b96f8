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
#include "clsi/random.hpp"
#include "support/oracles.hpp"

using namespace clsi;
using fixedpoint::commutant_basis;
using lindblad::LindbladGenerator;
using linalg::HermitianOperator;
using linalg::pauli;

namespace {

std::vector<HermitianOperator> jumps(std::initializer_list<ComplexMatrix> js) {
  std::vector<HermitianOperator> v;
  for (const auto& a : js) v.emplace_back(a);
  return v;
}

// Dimension of the commutant from the stacked commutator system, via LU.
int commutant_dimension_lu(const std::vector<HermitianOperator>& js, int n) {
  if (js.empty()) return n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix stacked(n * n * static_cast<int>(js.size()), n * n);
  for (std::size_t k = 0; k < js.size(); ++k) {
    stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) =
        linalg::kron(id, js[k].matrix()) - linalg::kron(js[k].matrix().transpose(), id);
  }
  Eigen::FullPivLU<ComplexMatrix> lu(stacked);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.dimensionOfKernel());
}

}  // namespace

TEST_CASE("dephasing commutant is the diagonal algebra") {
  const auto b = commutant_basis(jumps({pauli(3)}), 2);
  CHECK(b.size() == 2);
  for (const auto& e : b.elements()) {
    CHECK(std::abs(e(0, 1)) <= 1e-12);
    CHECK(std::abs(e(1, 0)) <= 1e-12);
  }
  CHECK(oracle::max_abs(b.expectation(pauli(1))) <= 1e-12);
  const ComplexMatrix d = pauli(3) * 0.4 + ComplexMatrix::Identity(2, 2);
  CHECK(oracle::max_abs(b.expectation(d) - d) <= 1e-12);
}

TEST_CASE("depolarizing commutant is the scalars") {
  const auto b = commutant_basis(jumps({pauli(1), pauli(2), pauli(3)}), 2);
  CHECK(b.size() == 1);
  const ComplexMatrix x = oracle::random_hermitian(2, 1) + cd(0, 1) * oracle::random_hermitian(2, 2);
  CHECK(oracle::max_abs(b.expectation(x) - x.trace() * ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-12);
}

TEST_CASE("empty jump list gives the full matrix algebra") {
  const auto b = commutant_basis(std::vector<HermitianOperator>{}, 3);
  CHECK(b.size() == 9);
  const ComplexMatrix x = oracle::random_hermitian(3, 5);
  CHECK(oracle::max_abs(b.expectation(x) - x) <= 1e-12);
}

TEST_CASE("commutant basis invariants on random generators") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    random::Rng rng(seed);
    std::vector<HermitianOperator> js;
    // Block-diagonal jumps so the commutant is nontrivial in half the cases.
    for (int k = 0; k < 2; ++k) {
      ComplexMatrix a = random::hermitian(n, rng).matrix();
      if (seed % 2 == 0) {
        a.row(0).tail(n - 1).setZero();
        a.col(0).tail(n - 1).setZero();
      }
      js.emplace_back(a);
    }
    const auto b = commutant_basis(js, n);
    const auto gen = LindbladGenerator::build(js, n);
    CHECK(b.size() == gen.kernel_dimension());
    CHECK(b.size() == commutant_dimension_lu(js, n));
    for (int i = 0; i < b.size(); ++i) {
      for (const auto& a : js) {
        CHECK(oracle::max_abs(linalg::commutator(a.matrix(), b.elements()[i])) <= 1e-10);
      }
      for (int j = 0; j < b.size(); ++j) {
        const cd ip = linalg::hs_inner(b.elements()[i], b.elements()[j]);
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-10);
      }
    }
    // Identity is in the span.
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    CHECK(oracle::max_abs(b.expectation(id) - id) <= 1e-10);

    const ComplexMatrix x = oracle::random_hermitian(n, 10 + seed) + cd(0, 1) * oracle::random_hermitian(n, 20 + seed);
    const ComplexMatrix ex = b.expectation(x);
    CHECK(oracle::max_abs(b.expectation(ex) - ex) <= 1e-10);
    CHECK(std::abs(ex.trace() - x.trace()) <= 1e-12);
    for (const auto& a : js) CHECK(oracle::max_abs(linalg::commutator(a.matrix(), ex)) <= 1e-10);
    const ComplexMatrix y = oracle::random_hermitian(n, 30 + seed);
    CHECK(std::abs(linalg::hs_inner(b.expectation(y), x) - linalg::hs_inner(y, ex)) <= 1e-10);

    // Bimodule property.
    const ComplexMatrix& p = b.elements().front();
    const ComplexMatrix& q = b.elements().back();
    CHECK(oracle::max_abs(b.expectation(p * x * q) - p * ex * q) <= 1e-9);

    // E_N T_t = T_t E_N = E_N.
    CHECK(oracle::max_abs(b.expectation(gen.evolve_matrix(x, 0.7)) - ex) <= 1e-9);
    CHECK(oracle::max_abs(gen.evolve_matrix(ex, 0.7) - ex) <= 1e-9);
  }
}

TEST_CASE("expectation limit checks") {
  const std::vector<HermitianOperator> deph = jumps({pauli(3)});
  const auto gen = LindbladGenerator::build(deph);
  const auto b = commutant_basis(gen);
  CHECK(linalg::max_abs(gen.evolve_matrix(pauli(1), 10.0)) <= std::exp(-40.0) * 1.01);
  CHECK(fixedpoint::check_expectation_limit(gen, b, {pauli(1)}, 10.0) <= 1e-12);
  CHECK(fixedpoint::check_expectation_limit(gen, b, {ComplexMatrix::Identity(2, 2)}, 5.0) == 0.0);
  CHECK_THROWS_AS(fixedpoint::check_expectation_limit(gen, b, {pauli(1)}, 1.0), InvalidInput);

  random::Rng rng(42);
  const auto g4 = LindbladGenerator::build({random::hermitian(4, rng), random::hermitian(4, rng)}, 4);
  const auto b4 = commutant_basis(g4);
  std::vector<ComplexMatrix> xs;
  for (unsigned s = 0; s < 5; ++s) xs.push_back(oracle::random_hermitian(4, s));
  CHECK(fixedpoint::check_expectation_limit(g4, b4, xs, 20.0 / g4.spectral_gap()) <= 1e-6);
}

TEST_CASE("ambiguous spectral separation is reported") {
  // ad^dag ad has eigenvalue 4 eps^2 = 4e-10 against a threshold of 1e-9.
  const double eps = 1e-5;
  CHECK_THROWS_AS(commutant_basis(jumps({eps * pauli(3)}), 2), AmbiguityError);
}
