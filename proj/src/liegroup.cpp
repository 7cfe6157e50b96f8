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

#include "clsi/liegroup.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "clsi/errors.hpp"

namespace clsi::liegroup {

namespace {

constexpr cd kI(0.0, 1.0);

int numeric_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++r;
  }
  return r;
}

Eigen::MatrixXd stack(const std::vector<RealVector>& vs, int dim) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return m;
}

}  // namespace

LieAlgebra LieAlgebra::su2() { return LieAlgebra(); }

LieAlgebra LieAlgebra::torus(int d) {
  if (d < 1) throw InvalidInput("torus dimension must be >= 1");
  LieAlgebra a;
  a.kind_ = GroupKind::Torus;
  a.dim_ = d;
  return a;
}

std::string LieAlgebra::name() const {
  return kind_ == GroupKind::SU2 ? "su2" : "torus" + std::to_string(dim_);
}

ComplexMatrix LieAlgebra::basis(int k) const {
  if (k < 0 || k >= dim_) throw InvalidInput("algebra basis index out of range");
  if (kind_ == GroupKind::SU2) return -0.5 * kI * linalg::pauli(k + 1);
  ComplexMatrix e = ComplexMatrix::Zero(dim_, dim_);
  e(k, k) = kI;
  return e;
}

ComplexMatrix LieAlgebra::element(const RealVector& c) const {
  if (c.size() != dim_) throw DimensionError("algebra coordinate length mismatch");
  const int n = defining_dim();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < dim_; ++k) a += c(k) * basis(k);
  return a;
}

double LieAlgebra::inner(const ComplexMatrix& a, const ComplexMatrix& b) const {
  const double scale = kind_ == GroupKind::SU2 ? -2.0 : -1.0;
  return scale * (a * b).trace().real();
}

RealVector LieAlgebra::coordinates(const ComplexMatrix& a) const {
  RealVector c(dim_);
  for (int k = 0; k < dim_; ++k) c(k) = inner(basis(k), a);
  return c;
}

RealVector LieAlgebra::bracket(const RealVector& a, const RealVector& b) const {
  if (kind_ == GroupKind::Torus) return RealVector::Zero(dim_);
  const Eigen::Vector3d x = a.head<3>(), y = b.head<3>();
  return x.cross(y);
}

ComplexMatrix LieAlgebra::exp(const RealVector& c) const {
  if (c.size() != dim_) throw DimensionError("algebra coordinate length mismatch");
  if (kind_ == GroupKind::Torus) {
    ComplexMatrix g = ComplexMatrix::Zero(dim_, dim_);
    for (int k = 0; k < dim_; ++k) g(k, k) = std::exp(kI * c(k));
    return g;
  }
  // exp(-i theta n.sigma / 2) = cos(theta/2) I - i sin(theta/2) n.sigma
  const double theta = c.norm();
  ComplexMatrix g = std::cos(0.5 * theta) * ComplexMatrix::Identity(2, 2);
  if (theta > 0.0) {
    const double s = std::sin(0.5 * theta) / theta;
    for (int k = 0; k < 3; ++k) g -= kI * (s * c(k)) * linalg::pauli(k + 1);
  }
  return g;
}

RealVector LieAlgebra::haar_coordinates(random::Rng& rng) const {
  if (kind_ == GroupKind::Torus) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    RealVector c(dim_);
    for (int k = 0; k < dim_; ++k) c(k) = u(rng);
    return c;
  }
  std::normal_distribution<double> g;
  Eigen::Vector4d q;
  for (int k = 0; k < 4; ++k) q(k) = g(rng);
  q.normalize();
  // q = (w, v) <-> w I - i v.sigma = exp(theta n.e), theta = 2 atan2(|v|, w).
  const Eigen::Vector3d v = q.tail<3>();
  const double nv = v.norm();
  if (nv == 0.0) return RealVector::Zero(3);
  return (2.0 * std::atan2(nv, q(0)) / nv) * v;
}

Representation::Representation(LieAlgebra algebra, std::vector<ComplexMatrix> images)
    : algebra_(algebra), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != algebra_.dim()) {
    throw DimensionError("representation needs one image per algebra basis element");
  }
  n_ = static_cast<int>(images_.front().rows());
  for (const auto& m : images_) {
    if (m.rows() != n_ || m.cols() != n_) throw DimensionError("representation image dimension mismatch");
    if (linalg::max_abs(m + m.adjoint()) > 1e-12 * std::max(1.0, linalg::max_abs(m))) {
      throw InvalidInput("representation images must be anti-Hermitian");
    }
  }
}

ComplexMatrix Representation::phi(const RealVector& c) const {
  if (c.size() != algebra_.dim()) throw DimensionError("algebra coordinate length mismatch");
  ComplexMatrix a = ComplexMatrix::Zero(n_, n_);
  for (int k = 0; k < algebra_.dim(); ++k) a += c(k) * images_[k];
  return a;
}

ComplexMatrix Representation::group(const RealVector& c) const {
  // phi(A) = -i H with H Hermitian, exp(phi(A)) = U exp(-i Lambda) U^dag.
  const ComplexMatrix h = kI * phi(c);
  const auto eig = linalg::eigh(linalg::HermitianOperator::hermitian_part(h));
  ComplexVector ph(n_);
  for (int k = 0; k < n_; ++k) ph(k) = std::exp(-kI * eig.values(k));
  return eig.vectors * ph.asDiagonal() * eig.vectors.adjoint();
}

double Representation::homomorphism_residual() const {
  double worst = 0.0;
  const int d = algebra_.dim();
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      RealVector ek = RealVector::Unit(d, k), el = RealVector::Unit(d, l);
      const ComplexMatrix lhs = phi(algebra_.bracket(ek, el));
      const ComplexMatrix rhs = linalg::commutator(images_[k], images_[l]);
      worst = std::max(worst, linalg::max_abs(lhs - rhs));
    }
  }
  return worst;
}

std::vector<ComplexMatrix> angular_momentum(double j) {
  const double twice = 2.0 * j;
  if (j < 0.0 || std::abs(twice - std::round(twice)) > 1e-12) {
    throw InvalidInput("spin must be a nonnegative half-integer");
  }
  const int n = static_cast<int>(std::round(twice)) + 1;
  ComplexMatrix jz = ComplexMatrix::Zero(n, n), jp = ComplexMatrix::Zero(n, n);
  // Basis index i carries magnetic number m_i = j - i.
  for (int i = 0; i < n; ++i) {
    const double m = j - i;
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jm = jp.adjoint();
  return {0.5 * (jp + jm), (jp - jm) / (2.0 * kI), jz};
}

Representation su2_spin_representation(double j) {
  if (j > 3.5) throw InvalidInput("spin above 7/2 is not supported");
  const auto js = angular_momentum(j);
  return Representation(LieAlgebra::su2(), {-kI * js[0], -kI * js[1], -kI * js[2]});
}

Representation torus_representation(const Eigen::MatrixXi& w) {
  if (w.rows() < 1 || w.cols() < 1) throw InvalidInput("torus weights must be nonempty");
  const int d = static_cast<int>(w.cols());
  std::vector<ComplexMatrix> images;
  for (int k = 0; k < d; ++k) {
    images.push_back((kI * w.col(k).cast<double>().cast<cd>()).asDiagonal());
  }
  return Representation(LieAlgebra::torus(d), std::move(images));
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.algebra().kind() != b.algebra().kind() || a.algebra().dim() != b.algebra().dim()) {
    throw InvalidInput("direct_sum: representations of different groups");
  }
  std::vector<ComplexMatrix> images;
  const int n = a.dim() + b.dim();
  for (int k = 0; k < a.algebra().dim(); ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m.topLeftCorner(a.dim(), a.dim()) = a.images()[k];
    m.bottomRightCorner(b.dim(), b.dim()) = b.images()[k];
    images.push_back(m);
  }
  return Representation(a.algebra(), std::move(images));
}

Representation tensor_product(const Representation& a, const Representation& b) {
  if (a.algebra().kind() != b.algebra().kind() || a.algebra().dim() != b.algebra().dim()) {
    throw InvalidInput("tensor_product: representations of different groups");
  }
  std::vector<ComplexMatrix> images;
  const ComplexMatrix ia = ComplexMatrix::Identity(a.dim(), a.dim());
  const ComplexMatrix ib = ComplexMatrix::Identity(b.dim(), b.dim());
  for (int k = 0; k < a.algebra().dim(); ++k) {
    images.push_back(linalg::kron(a.images()[k], ib) + linalg::kron(ia, b.images()[k]));
  }
  return Representation(a.algebra(), std::move(images));
}

HorizontalSystem::HorizontalSystem(LieAlgebra algebra, std::vector<RealVector> directions)
    : algebra_(algebra), directions_(std::move(directions)) {
  if (directions_.empty()) throw InvalidInput("horizontal system needs at least one direction");
  for (const auto& v : directions_) {
    if (v.size() != algebra_.dim()) throw DimensionError("direction length must equal the algebra dimension");
  }
  const Eigen::MatrixXd r = stack(directions_, algebra_.dim());
  const Eigen::MatrixXd gram = r * r.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double lmin = es.eigenvalues()(0);
  const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(lmin > 1e-10 * std::max(1.0, lmax))) {
    throw InvalidInput("horizontal directions are linearly dependent");
  }
  basis_constant_ = lmin;
  orthonormal_input_ =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-12;

  for (RealVector v : directions_) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : orthonormal_) v -= q.dot(v) * q;
    }
    orthonormal_.push_back(v / v.norm());
  }
}

std::vector<ComplexMatrix> HorizontalSystem::orthonormal_matrices() const {
  std::vector<ComplexMatrix> out;
  for (const auto& v : orthonormal_) out.push_back(algebra_.element(v));
  return out;
}

HormanderResult hormander_check(const HorizontalSystem& h, int max_depth) {
  if (max_depth < 1) throw InvalidInput("hormander_check: max_depth must be >= 1");
  const int dim = h.algebra().dim();
  std::vector<RealVector> all = h.directions();
  std::vector<RealVector> level = h.directions();
  int rank = numeric_rank(stack(all, dim));
  for (int depth = 1; depth <= max_depth; ++depth) {
    if (rank == dim) return {true, depth};
    std::vector<RealVector> next;
    for (const auto& x : h.directions()) {
      for (const auto& y : level) next.push_back(h.algebra().bracket(x, y));
    }
    all.insert(all.end(), next.begin(), next.end());
    const int new_rank = numeric_rank(stack(all, dim));
    if (new_rank == rank) return {false, depth};
    rank = new_rank;
    level = std::move(next);
  }
  return {rank == dim, max_depth};
}

std::vector<linalg::HermitianOperator> transfer_lindbladian(const Representation& rep,
                                                            const HorizontalSystem& h) {
  if (rep.algebra().kind() != h.algebra().kind() || rep.algebra().dim() != h.algebra().dim()) {
    throw DimensionError("transfer_lindbladian: representation and system use different algebras");
  }
  std::vector<linalg::HermitianOperator> out;
  for (const auto& x : h.directions()) out.emplace_back(ComplexMatrix(-kI * rep.phi(x)));
  return out;
}

double intertwining_residual(const Representation& rep, const HorizontalSystem& h, int samples,
                             std::uint64_t seed) {
  const auto jumps = transfer_lindbladian(rep, h);
  const int n = rep.dim();
  const double step = 1e-5;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    random::Rng rng(random::derive_seed(seed, static_cast<std::uint64_t>(s)));
    const ComplexMatrix ug = rep.group(rep.algebra().haar_coordinates(rng));
    const ComplexMatrix x = random::ginibre(n, n, rng);
    const int k = s % h.size();
    const RealVector& dir = h.directions()[k];
    auto f = [&](double t) {
      const ComplexMatrix u = rep.group(t * dir) * ug;
      return ComplexMatrix(u.adjoint() * x * u);
    };
    const ComplexMatrix fd = (f(step) - f(-step)) / (2.0 * step);
    const ComplexMatrix exact = -kI * ug.adjoint() * linalg::commutator(jumps[k].matrix(), x) * ug;
    worst = std::max(worst, linalg::max_abs(fd - exact) / std::max(1.0, linalg::max_abs(x)));
  }
  return worst;
}

ComplexMatrix haar_twirl(const Representation& rep, const ComplexMatrix& x, int n_quad,
                         std::uint64_t seed) {
  if (n_quad < 1) throw InvalidInput("haar_twirl: n_quad must be >= 1");
  const int n = rep.dim();
  if (x.rows() != n || x.cols() != n) throw DimensionError("haar_twirl: dimension mismatch");
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  const LieAlgebra& alg = rep.algebra();
  if (alg.kind() == GroupKind::SU2) {
    random::Rng rng(seed);
    for (int q = 0; q < n_quad; ++q) {
      const ComplexMatrix u = rep.group(alg.haar_coordinates(rng));
      acc += u.adjoint() * x * u;
    }
    return acc / static_cast<double>(n_quad);
  }
  const int d = alg.dim();
  long long total = 1;
  for (int k = 0; k < d; ++k) total *= n_quad;
  if (total > 100000000LL) throw InvalidInput("haar_twirl: torus grid too large");
  RealVector c(d);
  for (long long idx = 0; idx < total; ++idx) {
    long long r = idx;
    for (int k = 0; k < d; ++k) {
      c(k) = 2.0 * M_PI * static_cast<double>(r % n_quad) / n_quad;
      r /= n_quad;
    }
    // Diagonal representation: u = exp(phi(c)) entrywise.
    const ComplexMatrix p = rep.phi(c);
    ComplexVector ph(n);
    for (int i = 0; i < n; ++i) ph(i) = std::exp(p(i, i));
    acc += ph.conjugate().asDiagonal() * x * ph.asDiagonal();
  }
  return acc / static_cast<double>(total);
}

namespace {

Representation su2_from_spins(const io::json& spins) {
  if (spins.is_number()) return su2_spin_representation(spins.get<double>());
  if (!spins.is_array() || spins.empty()) throw ConfigError("\"spin\" must be a number or a nonempty list");
  Representation r = su2_spin_representation(spins[0].get<double>());
  for (std::size_t i = 1; i < spins.size(); ++i) r = direct_sum(r, su2_spin_representation(spins[i].get<double>()));
  return r;
}

RealVector direction_from_json(const io::json& d, const LieAlgebra& alg) {
  if (d.is_string()) {
    if (alg.kind() != GroupKind::SU2) throw ConfigError("named directions are only defined for su2");
    const std::string s = d.get<std::string>();
    int k = -1;
    if (s == "X") k = 0;
    if (s == "Y") k = 1;
    if (s == "Z") k = 2;
    if (k < 0) throw ConfigError("unknown direction name \"" + s + "\"");
    return RealVector::Unit(3, k);
  }
  if (!d.is_array() || static_cast<int>(d.size()) != alg.dim()) {
    throw ConfigError("direction must be a name or a coordinate list of the algebra dimension");
  }
  RealVector v(alg.dim());
  for (int k = 0; k < alg.dim(); ++k) v(k) = d[k].get<double>();
  return v;
}

}  // namespace

SystemConfig system_from_json(const io::json& j) {
  try {
    const std::string group = j.at("group").get<std::string>();
    std::optional<Representation> rep;
    LieAlgebra alg = LieAlgebra::su2();
    if (group == "su2") {
      if (j.contains("tensor")) {
        const auto& t = j.at("tensor");
        if (!t.is_array() || t.empty()) throw ConfigError("\"tensor\" must be a nonempty list of spins");
        Representation r = su2_spin_representation(t[0].get<double>());
        for (std::size_t i = 1; i < t.size(); ++i) r = tensor_product(r, su2_spin_representation(t[i].get<double>()));
        rep = r;
      } else {
        rep = su2_from_spins(j.at("spin"));
      }
    } else if (group == "torus") {
      const int d = j.at("d").get<int>();
      alg = LieAlgebra::torus(d);
      const auto& w = j.at("weights");
      if (!w.is_array() || w.empty()) throw ConfigError("\"weights\" must be a nonempty list of rows");
      Eigen::MatrixXi wm(static_cast<Eigen::Index>(w.size()), d);
      for (std::size_t r = 0; r < w.size(); ++r) {
        if (static_cast<int>(w[r].size()) != d) throw ConfigError("each weight row needs d entries");
        for (int k = 0; k < d; ++k) wm(static_cast<Eigen::Index>(r), k) = w[r][k].get<int>();
      }
      rep = torus_representation(wm);
    } else {
      throw ConfigError("unknown group \"" + group + "\" (expected su2 or torus)");
    }
    std::vector<RealVector> dirs;
    for (const auto& d : j.at("directions")) dirs.push_back(direction_from_json(d, alg));
    return SystemConfig{*rep, HorizontalSystem(alg, std::move(dirs)), j};
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("system config: ") + e.what());
  }
}

}  // namespace clsi::liegroup
