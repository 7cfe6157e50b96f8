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

#include "clsi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "clsi/errors.hpp"

namespace clsi::linalg {

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("HermitianOperator: matrix must be square and non-empty");
  }
  if (!a.allFinite()) {
    throw InvalidInput("HermitianOperator: non-finite entry");
  }
  const double scale = max_abs(a);
  const double defect = max_abs(a - a.adjoint());
  if (defect > 1e-12 * scale) {
    std::ostringstream os;
    os << "HermitianOperator: matrix is not Hermitian (defect " << defect << ")";
    throw InvalidInput(os.str());
  }
  m_ = 0.5 * (a + a.adjoint());
}

HermitianOperator::HermitianOperator(const ComplexMatrix& a, Unchecked)
    : m_(0.5 * (a + a.adjoint())) {}

HermitianOperator HermitianOperator::hermitian_part(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("HermitianOperator: matrix must be square and non-empty");
  }
  return HermitianOperator(a, Unchecked{});
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  return vectors * values.cast<cd>().asDiagonal() * vectors.adjoint();
}

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index q = 0; q < n; ++q) {
    for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
  }
  return 2.0 * s;
}

}  // namespace

EigenDecomposition eigh(const HermitianOperator& op) {
  ComplexMatrix a = op.matrix();
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double total = a.squaredNorm();
  const double target = total * 1e-30;  // (1e-15 ||A||_F)^2

  bool converged = total == 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm2(a) <= target) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Skip rotations that cannot change the diagonal at working precision.
        if (sweep > 3 && mag < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const cd phase = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cd u00 = c;
        const cd u01 = s;
        const cd u10 = -s * std::conj(phase);
        const cd u11 = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const cd akp = a(k, p);
          const cd akq = a(k, q);
          a(k, p) = akp * u00 + akq * u10;
          a(k, q) = akp * u01 + akq * u11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cd apk = a(p, k);
          const cd aqk = a(q, k);
          a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
          a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cd vkp = v(k, p);
          const cd vkq = v(k, q);
          v(k, p) = vkp * u00 + vkq * u10;
          v(k, q) = vkp * u01 + vkq * u11;
        }
      }
    }
  }
  // Rounding can leave the off-diagonal mass marginally above target.
  if (!converged && off_diagonal_norm2(a) > total * 1e-24) {
    throw NumericalError("eigh: Jacobi iteration did not converge within 100 sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

ScalarFunction ScalarFunction::log() {
  return {"log", [](double x) { return x > 0.0 ? std::log(x) : std::nan(""); },
          [](double x) { return x > 0.0 ? 1.0 / x : std::nan(""); }};
}

ScalarFunction ScalarFunction::exp() {
  return {"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }};
}

ScalarFunction ScalarFunction::identity() {
  return {"identity", [](double x) { return x; }, [](double) { return 1.0; }};
}

ScalarFunction ScalarFunction::square() {
  return {"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }};
}

ScalarFunction ScalarFunction::sqrt() {
  return {"sqrt", [](double x) { return x >= 0.0 ? std::sqrt(x) : std::nan(""); },
          [](double x) { return x > 0.0 ? 0.5 / std::sqrt(x) : std::nan(""); }};
}

HermitianOperator matrix_function(const EigenDecomposition& eig, const ScalarFunction& f) {
  const Eigen::Index n = eig.values.size();
  ComplexVector fv(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double y = f.value(eig.values(k));
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "matrix_function: " << f.name << " undefined at eigenvalue " << eig.values(k);
      throw DomainError(os.str());
    }
    fv(k) = y;
  }
  return HermitianOperator::hermitian_part(eig.vectors * fv.asDiagonal() *
                                           eig.vectors.adjoint());
}

HermitianOperator matrix_function(const HermitianOperator& a, const ScalarFunction& f) {
  return matrix_function(eigh(a), f);
}

ComplexMatrix divided_difference_transform(const EigenDecomposition& eig,
                                           const ComplexMatrix& x,
                                           const ScalarFunction& f) {
  const Eigen::Index n = eig.values.size();
  if (x.rows() != n || x.cols() != n) {
    throw DimensionError("divided_difference_transform: dimension mismatch");
  }
  const double scale = std::max(eig.values.cwiseAbs().maxCoeff(), 1e-300);
  RealVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) fv(i) = f.value(eig.values(i));

  ComplexMatrix y = eig.vectors.adjoint() * x * eig.vectors;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double li = eig.values(i);
      const double lj = eig.values(j);
      double dd;
      if (std::abs(li - lj) <= kDegeneracyThreshold * scale) {
        dd = f.derivative(li);
      } else {
        dd = (fv(i) - fv(j)) / (li - lj);
      }
      if (!std::isfinite(dd)) {
        std::ostringstream os;
        os << "divided_difference_transform: " << f.name << " undefined near eigenvalue " << li;
        throw DomainError(os.str());
      }
      y(i, j) *= dd;
    }
  }
  return eig.vectors * y * eig.vectors.adjoint();
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim || x.cols() != dim) {
    throw DimensionError("Superoperator::apply: dimension mismatch");
  }
  return unvec(matrix * vec(x), dim);
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionError("unvec: length is not n^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix matrix_unit(int n, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Superoperator vectorize_map(const LinearMap& phi, int n) {
  if (n <= 0) throw DimensionError("vectorize_map: n must be positive");
  Superoperator s{n, ComplexMatrix(n * n, n * n)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const ComplexMatrix y = phi(matrix_unit(n, i, j));
      if (y.rows() != n || y.cols() != n) {
        throw DimensionError("vectorize_map: map changes the matrix dimension");
      }
      s.matrix.col(i + j * n) = vec(y);
    }
  }
  return s;
}

ChoiMatrix choi_matrix(const Superoperator& s) {
  const int n = s.dim;
  ChoiMatrix c;
  c.matrix = ComplexMatrix::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const ComplexMatrix y = unvec(s.matrix.col(i + j * n), n);
      c.matrix.block(i * n, j * n, n, n) = y;
    }
  }
  c.hermiticity_defect = max_abs(c.matrix - c.matrix.adjoint());
  c.hermitian = c.hermiticity_defect <= 1e-10 * std::max(1.0, max_abs(c.matrix));
  return c;
}

bool is_completely_positive(const Superoperator& s, double tol) {
  const ChoiMatrix c = choi_matrix(s);
  if (!c.hermitian) return false;
  const EigenDecomposition eig = eigh(HermitianOperator::hermitian_part(c.matrix));
  return eig.values(0) >= -tol;
}

cd hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix pauli(int k) {
  ComplexMatrix p(2, 2);
  const cd i(0.0, 1.0);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -i, i, 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: throw InvalidInput("pauli: index must be 0..3");
  }
  return p;
}

HermitianOperator divided_difference_transform(const DensityOperator& sigma,
                                               const HermitianOperator& x,
                                               const ScalarFunction& f) {
  const auto& eig = sigma.eigen();
  const double top = eig.values.maxCoeff();
  if (eig.values(0) <= 1e-14 * top) {
    throw RankDeficiencyError(
        "divided_difference_transform: state is singular; restrict to its support first");
  }
  return HermitianOperator::hermitian_part(divided_difference_transform(eig, x.matrix(), f));
}

}  // namespace clsi::linalg

namespace clsi {

DensityOperator DensityOperator::from_matrix(const ComplexMatrix& rho, double negative_tolerance,
                                             bool renormalize) {
  linalg::HermitianOperator h(rho);
  ComplexMatrix m = h.matrix();
  const double tr = m.trace().real();
  if (renormalize) {
    if (!(tr > 0.0)) throw InvalidInput("DensityOperator: trace must be positive to renormalize");
    m /= tr;
  } else if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "DensityOperator: trace " << tr << " differs from 1";
    throw InvalidInput(os.str());
  }
  DensityOperator out;
  out.eig_ = linalg::eigh(linalg::HermitianOperator::hermitian_part(m));
  bool clamped = false;
  for (Eigen::Index k = 0; k < out.eig_.values.size(); ++k) {
    double& l = out.eig_.values(k);
    if (l < -negative_tolerance) {
      std::ostringstream os;
      os << "DensityOperator: eigenvalue " << l << " is negative";
      throw InvalidInput(os.str());
    }
    if (l < 0.0) {
      l = 0.0;
      clamped = true;
    }
  }
  if (clamped) {
    out.eig_.values /= out.eig_.values.sum();
    m = out.eig_.reconstruct();
    m = 0.5 * (m + m.adjoint());
  }
  out.m_ = m;
  return out;
}

DensityOperator DensityOperator::maximally_mixed(int n) {
  return from_matrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

}  // namespace clsi
