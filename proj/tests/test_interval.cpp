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
#include "clsi/interval.hpp"
#include "support/oracles.hpp"

using namespace clsi;
using namespace clsi::interval;

namespace {

double one(double) { return 1.0; }

MatrixFunction scalar_function(const RealVector& v) {
  MatrixFunction f;
  for (Eigen::Index i = 0; i < v.size(); ++i) f.push_back(ComplexMatrix::Constant(1, 1, v(i)));
  return f;
}

// 8-point Gauss-Legendre on [0, 1].
const double kGlNodes[8] = {0.0198550717512319, 0.1016667612931866, 0.2372337950418355, 0.4082826787521751,
                            0.5917173212478249, 0.7627662049581645, 0.8983332387068134, 0.9801449282487681};
const double kGlWeights[8] = {0.0506142681451881, 0.1111905172266872, 0.1568533229389436, 0.1813418916891810,
                              0.1813418916891810, 0.1568533229389436, 0.1111905172266872, 0.0506142681451881};

}  // namespace

TEST_CASE("density expressions") {
  const auto e = DensityExpr::parse("x^(n-1)/n", {{"n", 3.0}});
  const Jet j = e.jet(0.7);
  CHECK(j.v == Catch::Approx(0.49 / 3));
  CHECK(j.d1 == Catch::Approx(2 * 0.7 / 3));
  CHECK(j.d2 == Catch::Approx(2.0 / 3));
  const auto g = DensityExpr::parse("x^2*exp(-x^2/2) + sqrt(1 + x) - cos(pi*x)");
  const double x = 0.3, h = 1e-4;
  const auto f = [&](double t) { return g(t); };
  CHECK(g.jet(x).d1 == Catch::Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-7));
  CHECK(g.jet(x).d2 == Catch::Approx((f(x + h) - 2 * f(x) + f(x - h)) / (h * h)).epsilon(1e-5));
  const auto p = DensityExpr::parse("2^(cos(pi*x))");
  CHECK(p(0.0) == Catch::Approx(2.0));
  CHECK(p(1.0) == Catch::Approx(0.5));
  CHECK(p.jet(0.5).d1 == Catch::Approx(-M_PI * std::log(2.0)));
  CHECK(DensityExpr::parse("-x + 3*(x - 1)")(2.0) == Catch::Approx(1.0));
  CHECK_THROWS_AS(DensityExpr::parse("x^(n-1)"), ConfigError);
  CHECK_THROWS_AS(DensityExpr::parse("x + "), ConfigError);
  CHECK_THROWS_AS(DensityExpr::parse("(x"), ConfigError);
  CHECK_THROWS_AS(DensityExpr::parse("tan(x)"), ConfigError);
}

TEST_CASE("uniform Laplacian spectra") {
  const int n = 256;
  const auto per = WeightedInterval::build(one, n, true);
  // Fourier modes of the discrete circle: 4 N^2 sin^2(pi k / N).
  const double exact_per = 4.0 * n * n * std::pow(std::sin(M_PI / n), 2);
  CHECK(per.spectral_gap() == Catch::Approx(exact_per).epsilon(1e-10));
  CHECK(std::abs(per.spectral_gap() - 4 * M_PI * M_PI) <= 0.01 * 4 * M_PI * M_PI);
  const RealVector ev = per.spectrum();
  CHECK(std::abs(ev(0)) <= 1e-9);
  CHECK(ev(1) == Catch::Approx(ev(2)).epsilon(1e-10));  // +-k degeneracy

  const auto neu = WeightedInterval::build(one, n, false);
  // Cosine modes: 4 N^2 sin^2(pi k / (2N)).
  const double exact_neu = 4.0 * n * n * std::pow(std::sin(M_PI / (2 * n)), 2);
  CHECK(neu.spectral_gap() == Catch::Approx(exact_neu).epsilon(1e-10));
  CHECK(std::abs(neu.spectral_gap() - M_PI * M_PI) <= 0.01 * M_PI * M_PI);
}

TEST_CASE("weighted Laplacian structure") {
  const auto w = WeightedInterval::build([](double x) { return 2 * x; }, 200, false);
  CHECK(w.self_adjointness_residual() <= 1e-10);
  CHECK(w.weights().sum() == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(w.apply_laplacian(RealVector::Ones(200)).cwiseAbs().maxCoeff() <= 1e-10);
  const RealVector ev = w.spectrum();
  CHECK(ev.minCoeff() >= -1e-9);
  CHECK(std::abs(ev(0)) <= 1e-8);
  CHECK(ev(1) > 1.0);  // kernel is the constants only
  // Dense and matrix-free applications agree; <f, Lg>_mu = sum_e c_e df dg.
  const RealVector f = RealVector::LinSpaced(200, 0.0, 1.0).array().square();
  const RealVector g = RealVector::LinSpaced(200, 0.0, 1.0).array().sin();
  CHECK((w.laplacian() * f - w.apply_laplacian(f)).cwiseAbs().maxCoeff() <= 1e-8);
  double form = 0.0;
  for (std::size_t e = 0; e < w.edges().size(); ++e) {
    const auto [i, j] = w.edges()[e];
    form += w.edge_conductance()(static_cast<Eigen::Index>(e)) * (f(j) - f(i)) * (g(j) - g(i));
  }
  CHECK(w.weights().dot(f.cwiseProduct(w.apply_laplacian(g))) == Catch::Approx(form).epsilon(1e-10));
  // Eigenvectors are mu-orthonormal.
  const auto [vals, vecs] = w.eigenpairs();
  CHECK((vecs.transpose() * w.weights().asDiagonal() * vecs - Eigen::MatrixXd::Identity(200, 200))
            .cwiseAbs()
            .maxCoeff() <= 1e-9);
  CHECK_THROWS_AS(WeightedInterval::build(one, 8, true), InvalidInput);
  CHECK_THROWS_AS(WeightedInterval::build([](double x) { return x - 0.5; }, 64, true), InvalidInput);
}

TEST_CASE("scalar ratio matches the direct formula") {
  const auto w = WeightedInterval::build([](double x) { return 1.0 + x; }, 64, true);
  RealVector f(64);
  for (int i = 0; i < 64; ++i) f(i) = std::exp(std::sin(2 * M_PI * w.grid()(i)) + 0.3 * w.grid()(i));
  const double fbar = w.weights().dot(f);
  double d = 0.0, in = 0.0;
  for (int i = 0; i < 64; ++i) d += w.weights()(i) * f(i) * std::log(f(i) / fbar);
  for (std::size_t e = 0; e < w.edges().size(); ++e) {
    const auto [i, j] = w.edges()[e];
    in += w.edge_conductance()(static_cast<Eigen::Index>(e)) * (f(j) - f(i)) * (std::log(f(j)) - std::log(f(i)));
  }
  const auto sf = scalar_function(f);
  CHECK(interval_entropy(w, sf) == Catch::Approx(d).epsilon(1e-12));
  CHECK(interval_fisher(w, sf) == Catch::Approx(in).epsilon(1e-12));
  CHECK(interval_mlsi_ratio(w, sf) == Catch::Approx(in / (2 * d)).epsilon(1e-12));
  CHECK_THROWS_AS(interval_mlsi_ratio(w, scalar_function(RealVector::Constant(64, 2.0))), NearFixedPointError);
}

TEST_CASE("matrix Fisher form is the double operator integral along edges") {
  const auto w = WeightedInterval::build(one, 16, false);
  MatrixFunction f;
  for (int i = 0; i < 16; ++i) f.push_back(oracle::random_density(2, 100 + i, 0.2));
  // tr((A - B)(log A - log B)) = int_0^1 tr(dA J^log_{B + s dA}(dA)) ds.
  double quad = 0.0;
  for (std::size_t e = 0; e < w.edges().size(); ++e) {
    const auto [i, j] = w.edges()[e];
    const ComplexMatrix da = f[j] - f[i];
    double edge = 0.0;
    for (int q = 0; q < 8; ++q) {
      const ComplexMatrix s = f[i] + kGlNodes[q] * da;
      edge += kGlWeights[q] * (da * oracle::log_derivative_quadrature(s, da)).trace().real();
    }
    quad += w.edge_conductance()(static_cast<Eigen::Index>(e)) * edge;
  }
  CHECK(interval_fisher(w, f) == Catch::Approx(quad).epsilon(1e-5));
  // Entropy against the relative entropy oracle of the block state.
  ComplexMatrix mean = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 16; ++i) mean += w.weights()(i) * f[i];
  double d = 0.0;
  for (int i = 0; i < 16; ++i) d += w.weights()(i) * oracle::relative_entropy(f[i], mean);
  CHECK(interval_entropy(w, f) == Catch::Approx(d).epsilon(1e-10));
}

TEST_CASE("uniform interval constants") {
  IntervalMlsiOptions o;
  const auto per = interval_mlsi_estimate(WeightedInterval::build(one, 1024, true), 1, o);
  CHECK(std::abs(per.lambda_est - 4 * M_PI * M_PI) <= 0.1 * 4 * M_PI * M_PI);
  CHECK(std::abs(per.linearized_ratio - 2 * per.gap) <= 0.02 * 2 * per.gap);
  CHECK(per.lambda_est <= 1.05 * per.gap);
  const auto neu = interval_mlsi_estimate(WeightedInterval::build(one, 1024, false), 1, o);
  CHECK(std::abs(neu.lambda_est - M_PI * M_PI) <= 0.1 * M_PI * M_PI);
  CHECK(std::abs(neu.linearized_ratio - 2 * neu.gap) <= 0.02 * 2 * neu.gap);
  CHECK(per.to_json()["convention"] == "2D");
}

TEST_CASE("matrix extension and grid refinement") {
  IntervalMlsiOptions o;
  o.samples = 12;
  o.refine_count = 2;
  o.opt_budget = 100;
  const auto h = [](double x) { return 1.0 + 0.5 * std::cos(2 * M_PI * x); };
  const auto w = WeightedInterval::build(h, 128, true);
  const auto e1 = interval_mlsi_estimate(w, 1, o);
  const auto e2 = interval_mlsi_estimate(w, 2, o);
  CHECK(e2.lambda_est <= e1.lambda_est + 1e-12);
  CHECK(e1.lambda_est <= 1.05 * e1.gap);
  const auto fine = interval_mlsi_estimate(WeightedInterval::build(h, 256, true), 1, o);
  CHECK(std::abs(fine.lambda_est - e1.lambda_est) <= 0.05 * e1.lambda_est);
  CHECK_THROWS_AS(interval_mlsi_estimate(w, 0, o), InvalidInput);
}

TEST_CASE("curvature criterion") {
  const auto flat = curvature_lower_bound(DensityExpr::parse("1"), 1.0);
  CHECK(flat.holds);
  CHECK(flat.a == Catch::Approx(1.0));
  CHECK(flat.bound_closed == Catch::Approx(2 * std::exp(-1.0)));
  CHECK(flat.bound_open == Catch::Approx(0.5 * std::exp(-1.0)));
  // k e^{2x} - e^{2x} - e^{2x} = (k - 2) e^{2x}
  const auto e = DensityExpr::parse("exp(x)");
  const auto below = curvature_lower_bound(e, 1.5, 1000);
  CHECK_FALSE(below.holds);
  CHECK(below.a == Catch::Approx(-0.5 * std::exp(2 * 0.9995)).epsilon(1e-12));
  const auto above = curvature_lower_bound(e, 3.0, 1000);
  CHECK(above.holds);
  CHECK(above.a == Catch::Approx(std::exp(2 * 0.0005)).epsilon(1e-12));
}

TEST_CASE("modified Gaussian measures") {
  for (int n : {2, 3, 5}) {
    const std::map<std::string, double> p{{"n", static_cast<double>(n)}};
    const auto nu = DensityExpr::parse("x^(n-1)*exp(-x^2/2)", p);
    const auto be = bakry_emery_check(nu);
    // (x^2/2 - (n-1) log x)'' = 1 + (n-1)/x^2, smallest at x = 1.
    CHECK(be.kappa_min >= 1.0 - 1e-9);
    CHECK(be.kappa_min == Catch::Approx(static_cast<double>(n)).epsilon(1e-10));
    const auto r = modified_gaussian_bound(n);
    CHECK(std::abs(r.factor - std::exp(-0.5)) <= 1e-6);
    CHECK(r.bound_closed == Catch::Approx(2 * std::exp(-0.5)).epsilon(1e-6));
    CHECK(r.bound_open == Catch::Approx(1.0 / (2 * std::exp(0.5))).epsilon(1e-6));
  }
}

TEST_CASE("change of measure") {
  const auto mu = DensityExpr::parse("1 + x");
  const auto same = change_of_measure_bound(mu, mu, 3.0);
  CHECK(same.factor == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(same.clsi_mu_bound == Catch::Approx(3.0).epsilon(1e-14));
  // dnu/dmu ranges over [c/2, 2c]: factor 1/4.
  const auto nu = DensityExpr::parse("2^(cos(pi*x))");
  const auto r = change_of_measure_bound(DensityExpr::parse("1"), nu, 2.0);
  CHECK(r.factor == Catch::Approx(0.25).epsilon(1e-12));
  CHECK(r.clsi_mu_bound == Catch::Approx(0.5).epsilon(1e-12));
  // Monotone in clsi_nu.
  CHECK(change_of_measure_bound(mu, nu, 4.0).clsi_mu_bound > change_of_measure_bound(mu, nu, 2.0).clsi_mu_bound);
  // Interior extremum: ratio 1 + 0.5 sin(pi x) peaks at x = 1/2 between grid points.
  const auto bump = change_of_measure_bound(DensityExpr::parse("1"), DensityExpr::parse("1 + 0.5*sin(pi*x)"), 1.0, 17);
  CHECK(bump.factor == Catch::Approx(1.0 / 1.5).epsilon(1e-10));
  const auto vanish = change_of_measure_bound(DensityExpr::parse("x"), DensityExpr::parse("x*exp(-x)"), 1.0);
  CHECK(vanish.support_restricted);
  CHECK(vanish.factor == Catch::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("growth-order bound") {
  // alpha = 0: envelope sqrt(2/pi) e^{-x^2/2} / c1, maximal at 0.
  const auto b0 = growth_order_bound(0.0, 1.0, 2.0, 1.0);
  CHECK(b0.positive);
  CHECK(b0.sup_gprime_sq == Catch::Approx(2.0 / (M_PI * 4.0)).epsilon(1e-12));
  CHECK(b0.bound == Catch::Approx(M_PI * 4.0).epsilon(1e-12));
  // h = n x^{n-1}: alpha = n - 1, beta = n, c1 = n, c2 = 1. The bound grows
  // linearly in n and stays below twice the Neumann gap.
  double prev = 0.0;
  for (int n : {2, 3, 5, 10}) {
    const auto b = growth_order_bound(n - 1, n, n, 1.0);
    CHECK(b.positive);
    CHECK(b.bound > prev);
    prev = b.bound;
    const auto w = WeightedInterval::build([n](double x) { return n * std::pow(x, n - 1); }, 512, false);
    CHECK(b.bound <= 2.0 * w.spectral_gap());
  }
  const double r40 = growth_order_bound(39, 40, 40, 1).bound / 40.0;
  const double r80 = growth_order_bound(79, 80, 80, 1).bound / 80.0;
  CHECK(std::abs(r80 - r40) <= 0.05 * r40);
  // alpha -> beta: envelope diverges.
  CHECK(growth_order_bound(0.999999, 1.0, 1.0, 1.0).bound < 1e-3 * b0.bound);
  CHECK_THROWS_AS(growth_order_bound(2.0, 2.0, 1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(growth_order_bound(0.0, 0.5, 1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(growth_order_bound(0.0, 1.0, -1.0, 1.0), InvalidInput);
}
