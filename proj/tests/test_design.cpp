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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "clsi/design.hpp"
#include "clsi/errors.hpp"
#include "clsi/random.hpp"
#include "clsi/simplex.hpp"
#include "support/oracles.hpp"

using namespace clsi;
using namespace clsi::design;
using liegroup::LieAlgebra;
using linalg::pauli;

namespace {

// Entry-wise channel-equality oracle: applies both maps to every matrix unit.
double channel_distance(const AveragingDesign& d, const std::function<ComplexMatrix(const ComplexMatrix&)>& e, int n) {
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix x = linalg::matrix_unit(n, i, j);
      ComplexMatrix y = ComplexMatrix::Zero(n, n);
      for (int k = 0; k < d.size(); ++k) y += d.weights[k] * d.unitaries[k].adjoint() * x * d.unitaries[k];
      r = std::max(r, (y - e(x)).norm());
    }
  }
  return r;
}

ComplexMatrix dephase(const ComplexMatrix& x) { return ComplexMatrix(x.diagonal().asDiagonal()); }

ComplexMatrix depolarize(const ComplexMatrix& x) {
  return x.trace() / static_cast<double>(x.rows()) * ComplexMatrix::Identity(x.rows(), x.rows());
}

liegroup::Representation dephasing_rep() {
  Eigen::MatrixXi w(2, 1);
  w << 1, -1;
  return liegroup::torus_representation(w);
}

double weight_sum(const AveragingDesign& d) { return std::accumulate(d.weights.begin(), d.weights.end(), 0.0); }

}  // namespace

TEST_CASE("phase-1 simplex") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 1, 1, -1, 0;
  const Eigen::VectorXd b = (Eigen::VectorXd(2) << 1.0, 0.2).finished();
  const auto r = lp::find_feasible_point(a, b);
  REQUIRE(r.feasible);
  CHECK((a * r.x - b).norm() <= 1e-12);
  CHECK(r.x.minCoeff() >= 0.0);
  CHECK(r.basis.size() <= 2);

  // x1 + x2 = -1 has no nonnegative solution.
  Eigen::MatrixXd c(1, 2);
  c << 1, 1;
  CHECK_FALSE(lp::find_feasible_point(c, Eigen::VectorXd::Constant(1, -1.0)).feasible);

  // Redundant rows are tolerated.
  Eigen::MatrixXd e(3, 3);
  e << 1, 1, 1, 2, 2, 2, 1, 0, -1;
  const Eigen::VectorXd f = (Eigen::VectorXd(3) << 1.0, 2.0, 0.0).finished();
  const auto s = lp::find_feasible_point(e, f);
  REQUIRE(s.feasible);
  CHECK((e * s.x - f).norm() <= 1e-12);
}

TEST_CASE("twirl superoperator matches direct oracles") {
  const auto t = twirl_superoperator(dephasing_rep());
  CHECK(oracle::max_abs(t.matrix - oracle::superop(dephase, 2)) <= 1e-12);
  const auto half = liegroup::su2_spin_representation(0.5);
  CHECK(oracle::max_abs(twirl_superoperator(half).matrix - oracle::superop(depolarize, 2)) <= 1e-12);
  const auto one = liegroup::su2_spin_representation(1.0);
  CHECK(oracle::max_abs(twirl_superoperator(one).matrix - oracle::superop(depolarize, 3)) <= 1e-12);
}

TEST_CASE("dephasing design is {I, sigma_z}") {
  const auto d = find_design(dephasing_rep());
  REQUIRE(d.size() == 2);
  CHECK(d.residual <= 1e-14);
  CHECK(channel_distance(d, dephase, 2) <= 1e-14);
  CHECK(d.weights[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(d.weights[1] == Catch::Approx(0.5).margin(1e-15));
  // Second element equals sigma_z up to a phase.
  CHECK(std::abs(std::abs((d.unitaries[1].adjoint() * pauli(3)).trace()) - 2.0) <= 1e-14);
}

TEST_CASE("qubit depolarizing design is the Pauli group") {
  const auto d = find_design(liegroup::su2_spin_representation(0.5));
  REQUIRE(d.size() == 4);
  CHECK(d.residual <= 1e-14);
  CHECK(channel_distance(d, depolarize, 2) <= 1e-14);
  for (double w : d.weights) CHECK(w == Catch::Approx(0.25).margin(1e-15));
  // Already minimal: reduction leaves it alone.
  const auto r = reduce_support(d);
  CHECK(r.size() == 4);
  CHECK(r.reduced);
}

TEST_CASE("trivial representation") {
  Eigen::MatrixXi w(2, 1);
  w << 3, 3;
  const auto d = find_design(liegroup::torus_representation(w));
  CHECK(d.size() == 1);
  CHECK(d.weights[0] == 1.0);
  CHECK(oracle::max_abs(d.unitaries[0].adjoint() * d.unitaries[0] - ComplexMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(d.residual <= 1e-15);
}

TEST_CASE("LP designs") {
  DesignOptions o;
  o.shortcuts = false;
  const auto half = liegroup::su2_spin_representation(0.5);
  const auto d = find_design(half, o);
  CHECK(d.method == "lp");
  CHECK(d.residual <= 1e-8);
  CHECK(d.size() <= caratheodory_cap(2));
  CHECK(channel_distance(d, depolarize, 2) <= 1e-8);
  CHECK(weight_sum(d) == Catch::Approx(1.0).margin(1e-12));
  CHECK(*std::min_element(d.weights.begin(), d.weights.end()) >= 0.0);

  const auto one = liegroup::su2_spin_representation(1.0);
  const auto d1 = find_design(one);
  CHECK(d1.residual <= 1e-8);
  CHECK(d1.size() <= caratheodory_cap(3));
  CHECK(channel_distance(d1, depolarize, 3) <= 1e-8);

  Eigen::MatrixXi w(3, 2);
  w << 1, 0, 0, 1, 2, -1;
  const auto trep = liegroup::torus_representation(w);
  const auto d2 = find_design(trep, o);
  CHECK(d2.residual <= 1e-8);
  CHECK(d2.size() <= caratheodory_cap(3));
}

TEST_CASE("support reduction") {
  // Redundant dephasing design: 8 equally spaced phases.
  const auto rep = dephasing_rep();
  AveragingDesign d;
  for (int k = 0; k < 8; ++k) {
    d.unitaries.push_back(rep.group(RealVector::Constant(1, 2 * M_PI * k / 8)));
    d.weights.push_back(1.0 / 8);
  }
  const auto target = twirl_superoperator(rep);
  CHECK(verify_design(d, target) <= 1e-14);
  const auto r = reduce_support(d);
  CHECK(r.reduced);
  CHECK(r.size() <= 2);
  CHECK(verify_design(r, target) <= 1e-12);

  // 50-element mixture of conjugated Pauli designs (two entries split).
  random::Rng rng(5);
  const auto pauli_design = find_design(liegroup::su2_spin_representation(0.5));
  AveragingDesign mix;
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  for (int c = 0; c < 12; ++c) {
    const auto conj = conjugate(pauli_design, random::haar_unitary(2, rng));
    const double w = unif(rng);
    for (int k = 0; k < 4; ++k) {
      mix.unitaries.push_back(conj.unitaries[k]);
      mix.weights.push_back(w * conj.weights[k]);
    }
  }
  for (int k = 0; k < 2; ++k) {
    mix.weights[k] *= 0.5;
    mix.unitaries.push_back(mix.unitaries[k]);
    mix.weights.push_back(mix.weights[k]);
  }
  const double total = weight_sum(mix);
  for (auto& w : mix.weights) w /= total;
  REQUIRE(mix.size() == 50);
  const auto t2 = twirl_superoperator(liegroup::su2_spin_representation(0.5));
  CHECK(verify_design(mix, t2) <= 1e-13);
  const auto rm = reduce_support(mix);
  CHECK(rm.reduced);
  CHECK(rm.size() <= 14);
  CHECK(verify_design(rm, t2) <= 1e-10);
  CHECK(weight_sum(rm) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("conjugation covariance and permutation invariance") {
  const auto rep = liegroup::su2_spin_representation(0.5);
  DesignOptions o;
  o.shortcuts = false;
  const auto d = find_design(rep, o);
  random::Rng rng(8);
  const ComplexMatrix v = random::haar_unitary(2, rng);
  // Twirl of the conjugated representation v u v^dag.
  std::vector<ComplexMatrix> images;
  for (const auto& img : rep.images()) images.push_back(v * img * v.adjoint());
  const liegroup::Representation conj_rep(LieAlgebra::su2(), images);
  CHECK(verify_design(conjugate(d, v), twirl_superoperator(conj_rep)) <= 1e-8);

  AveragingDesign p = d;
  std::reverse(p.unitaries.begin(), p.unitaries.end());
  std::reverse(p.weights.begin(), p.weights.end());
  CHECK(std::abs(verify_design(p, twirl_superoperator(rep)) - d.residual) <= 1e-14);
}

TEST_CASE("design channel is completely positive") {
  const auto d = find_design(liegroup::su2_spin_representation(1.0));
  CHECK(linalg::is_completely_positive(design_channel(d.unitaries, d.weights)));
}

TEST_CASE("design errors and JSON") {
  const auto half = liegroup::su2_spin_representation(0.5);
  CHECK_THROWS_AS(find_design(half, twirl_superoperator(dephasing_rep())), InvalidInput);
  DesignOptions o;
  o.shortcuts = false;
  o.pool_size = 2;
  o.max_pool = 2;
  CHECK_THROWS_AS(find_design(half, o), PoolExhaustedError);
  const auto j = find_design(dephasing_rep()).to_json();
  CHECK(j["m"] == 2);
  CHECK(j["weights"].size() == 2);
  CHECK(j["unitaries"].size() == 2);
}
