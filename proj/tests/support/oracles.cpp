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

#include "support/oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

RealVector eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  return es.eigenvalues();
}

ComplexMatrix apply_function(const ComplexMatrix& a, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  RealVector v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = f(v(i));
  return es.eigenvectors() * v.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix expm(const ComplexMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix b = a / std::pow(2.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

ComplexMatrix lindblad(const std::vector<ComplexMatrix>& jumps, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& a : jumps) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        cd acc = 0.0;
        for (Eigen::Index k = 0; k < x.rows(); ++k) {
          for (Eigen::Index l = 0; l < x.rows(); ++l) {
            acc += a(i, k) * a(k, l) * x(l, j) + x(i, k) * a(k, l) * a(l, j) -
                   2.0 * a(i, k) * x(k, l) * a(l, j);
          }
        }
        out(i, j) += acc;
      }
    }
  }
  return out;
}

ComplexMatrix superop(const std::function<ComplexMatrix(const ComplexMatrix&)>& phi, int n) {
  ComplexMatrix s(n * n, n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      const ComplexMatrix y = phi(e);
      for (int q = 0; q < n; ++q) {
        for (int p = 0; p < n; ++p) s(p + q * n, i + j * n) = y(p, q);
      }
    }
  }
  return s;
}

ComplexMatrix log_derivative_quadrature(const ComplexMatrix& rho, const ComplexMatrix& x,
                                        double R) {
  const Eigen::Index n = rho.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  std::vector<double> gx, gw;
  gauss_legendre(20, gx, gw);
  auto integrand = [&](double s) {
    const ComplexMatrix inv = (rho + s * id).inverse();
    return ComplexMatrix(inv * x * inv);
  };
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  // [0, s0] directly, then s = exp(t) on [log s0, log R].
  const double s0 = 1e-14;
  for (int k = 0; k < 20; ++k) {
    const double s = 0.5 * s0 * (gx[k] + 1.0);
    total += 0.5 * s0 * gw[k] * integrand(s);
  }
  const double t0 = std::log(s0), t1 = std::log(R);
  const int panels = 400;
  const double h = (t1 - t0) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = t0 + p * h;
    for (int k = 0; k < 20; ++k) {
      const double t = a + 0.5 * h * (gx[k] + 1.0);
      const double s = std::exp(t);
      total += 0.5 * h * gw[k] * s * integrand(s);
    }
  }
  // Tail beyond R where (rho + s)^{-1} ~ 1/s.
  total += x / R;
  return total;
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  auto lg = [](double v) { return std::log(v); };
  return (rho * (apply_function(rho, lg) - apply_function(sigma, lg))).trace().real();
}

ComplexMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(gen), g(gen));
  }
  ComplexMatrix h = a + a.adjoint();
  return h / h.norm();
}

ComplexMatrix random_density(int n, unsigned seed, double floor) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(gen), g(gen));
  }
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - floor) * rho + floor * ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  return 0.5 * (rho + rho.adjoint());
}

double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace oracle
