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

#include "clsi/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "clsi/errors.hpp"
#include "clsi/fixedpoint.hpp"
#include "clsi/random.hpp"
#include "clsi/simplex.hpp"

namespace clsi::design {

using liegroup::GroupKind;
using liegroup::Representation;

namespace {

constexpr double kExact = 1e-12;
constexpr double kVerify = 1e-8;

ComplexMatrix conjugation_superop(const ComplexMatrix& u) {
  // x -> u^dag x u
  return linalg::kron(u.transpose(), u.adjoint());
}

// Real coordinates of a superoperator: real parts then imaginary parts.
RealVector real_coords(const ComplexMatrix& s) {
  RealVector r(2 * s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    r(i) = s.data()[i].real();
    r(s.size() + i) = s.data()[i].imag();
  }
  return r;
}

// Channel coordinates of each unitary with a trailing 1 (the weight-sum row).
Eigen::MatrixXd coordinate_matrix(const std::vector<ComplexMatrix>& us) {
  const Eigen::Index n = us.front().rows();
  Eigen::MatrixXd m(2 * n * n * n * n + 1, static_cast<Eigen::Index>(us.size()));
  for (std::size_t j = 0; j < us.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) << real_coords(conjugation_superop(us[j])), 1.0;
  }
  return m;
}

double column_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  double r = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) r = std::max(r, (a.col(c) - b.col(c)).norm());
  return r;
}

// Principal logarithm of an SU(2) matrix in algebra coordinates.
RealVector su2_log(const ComplexMatrix& u) {
  const double w = 0.5 * u.trace().real();
  const ComplexMatrix m = cd(0.0, 1.0) * (u - w * ComplexMatrix::Identity(2, 2));
  Eigen::Vector3d v;
  for (int k = 0; k < 3; ++k) v(k) = 0.5 * (linalg::pauli(k + 1) * m).trace().real();
  const double nv = v.norm();
  if (nv > 1e-14) return (2.0 * std::atan2(nv, w) / nv) * v;
  if (w < 0.0) return 2.0 * M_PI * RealVector::Unit(3, 0);
  return RealVector::Zero(3);
}

ComplexMatrix quaternion(double w, double x, double y, double z) {
  const cd i(0.0, 1.0);
  return w * ComplexMatrix::Identity(2, 2) -
         i * (x * linalg::pauli(1) + y * linalg::pauli(2) + z * linalg::pauli(3));
}

// Closure of a generating set inside SU(2), or empty when it exceeds the cap.
std::vector<ComplexMatrix> closure(const std::vector<ComplexMatrix>& gens, std::size_t cap) {
  std::vector<ComplexMatrix> group{ComplexMatrix::Identity(2, 2)};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : gens) {
      const ComplexMatrix p = group[head] * g;
      const bool seen = std::any_of(group.begin(), group.end(),
                                    [&](const ComplexMatrix& q) { return (q - p).norm() < 1e-9; });
      if (!seen) {
        group.push_back(p);
        if (group.size() > cap) return {};
      }
    }
  }
  return group;
}

// Binary polyhedral subgroups of SU(2): quaternion, tetrahedral, octahedral,
// icosahedral.
std::vector<std::vector<ComplexMatrix>> binary_polyhedral_groups() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix i = quaternion(0, 1, 0, 0), j = quaternion(0, 0, 1, 0);
  const ComplexMatrix t = quaternion(0.5, 0.5, 0.5, 0.5);
  const ComplexMatrix o = quaternion(r, r, 0, 0);
  const ComplexMatrix ico = quaternion(0.5 * phi, 0.5 / phi, 0.5, 0.0);
  return {closure({i, j}, 8), closure({i, j, t}, 24), closure({i, j, t, o}, 48), closure({t, ico}, 120)};
}

// Merges elements that give the same conjugation channel (u and e^{i phi} u).
void merge_duplicates(AveragingDesign& d) {
  AveragingDesign out = d;
  out.coords.clear();
  out.unitaries.clear();
  out.weights.clear();
  const double n = static_cast<double>(d.unitaries.front().rows());
  for (std::size_t k = 0; k < d.unitaries.size(); ++k) {
    bool merged = false;
    for (std::size_t l = 0; l < out.unitaries.size(); ++l) {
      if (std::abs(std::abs((out.unitaries[l].adjoint() * d.unitaries[k]).trace()) - n) < 1e-10) {
        out.weights[l] += d.weights[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      if (!d.coords.empty()) out.coords.push_back(d.coords[k]);
      out.unitaries.push_back(d.unitaries[k]);
      out.weights.push_back(d.weights[k]);
    }
  }
  d = std::move(out);
}

AveragingDesign uniform_design(const Representation& rep, std::vector<RealVector> coords, std::string method) {
  AveragingDesign d;
  d.method = std::move(method);
  for (auto& c : coords) {
    d.unitaries.push_back(rep.group(c));
    d.coords.push_back(std::move(c));
  }
  d.weights.assign(d.unitaries.size(), 1.0 / static_cast<double>(d.unitaries.size()));
  merge_duplicates(d);
  return d;
}

// Product grid on T^d whose characters annihilate every nonzero weight
// difference. Per axis, angles are multiples of 2 pi / (q_k g_k) with g_k the
// gcd of the differences along that axis.
std::vector<RealVector> torus_grid(const Representation& rep) {
  const int d = rep.algebra().dim();
  const int n = rep.dim();
  Eigen::MatrixXi w(n, d);
  for (int k = 0; k < d; ++k) {
    for (int a = 0; a < n; ++a) w(a, k) = static_cast<int>(std::lround(rep.images()[k](a, a).imag()));
  }
  std::vector<Eigen::VectorXi> diffs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Eigen::VectorXi delta = w.row(a) - w.row(b);
      if (delta.any()) diffs.push_back(delta);
    }
  }
  Eigen::VectorXi g = Eigen::VectorXi::Zero(d);
  for (const auto& delta : diffs) {
    for (int k = 0; k < d; ++k) g(k) = std::gcd(g(k), std::abs(delta(k)));
  }
  Eigen::VectorXi bound = Eigen::VectorXi::Ones(d);
  for (const auto& delta : diffs) {
    for (int k = 0; k < d; ++k) {
      if (g(k) > 0) bound(k) = std::max(bound(k), std::abs(delta(k)) / g(k) + 1);
    }
  }
  auto annihilates = [&](const Eigen::VectorXi& q) {
    for (const auto& delta : diffs) {
      bool killed = false;
      for (int k = 0; k < d && !killed; ++k) {
        killed = g(k) > 0 && q(k) > 1 && (delta(k) / g(k)) % q(k) != 0;
      }
      if (!killed) return false;
    }
    return true;
  };
  // Smallest product over q in [1, bound]^d.
  Eigen::VectorXi q = Eigen::VectorXi::Ones(d), best;
  long best_size = -1;
  while (true) {
    long size = 1;
    for (int k = 0; k < d; ++k) size *= q(k);
    if ((best_size < 0 || size < best_size) && annihilates(q)) {
      best = q;
      best_size = size;
    }
    int k = 0;
    while (k < d && ++q(k) > bound(k)) q(k++) = 1;
    if (k == d) break;
  }
  if (best_size < 0 || best_size > 100000) return {};
  std::vector<RealVector> out;
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
  while (true) {
    RealVector c(d);
    for (int k = 0; k < d; ++k) c(k) = g(k) > 0 ? 2.0 * M_PI * idx(k) / (best(k) * g(k)) : 0.0;
    out.push_back(c);
    int k = 0;
    while (k < d && ++idx(k) >= best(k)) idx(k++) = 0;
    if (k == d) break;
  }
  return out;
}

std::vector<AveragingDesign> closed_form_candidates(const Representation& rep) {
  std::vector<AveragingDesign> out;
  out.push_back(uniform_design(rep, {RealVector::Zero(rep.algebra().dim())}, "identity"));
  if (rep.algebra().kind() == GroupKind::Torus) {
    auto grid = torus_grid(rep);
    if (!grid.empty()) out.push_back(uniform_design(rep, std::move(grid), "torus-grid"));
  } else {
    for (const auto& group : binary_polyhedral_groups()) {
      if (group.empty()) continue;
      std::vector<RealVector> coords;
      for (const auto& u : group) coords.push_back(su2_log(u));
      out.push_back(uniform_design(rep, std::move(coords), "binary-polyhedral"));
    }
  }
  return out;
}

AveragingDesign finalize(AveragingDesign d, const linalg::Superoperator& target) {
  const int cap = caratheodory_cap(target.dim);
  if (d.size() > cap) d = reduce_support(d);
  d.residual = verify_design(d, target);
  return d;
}

AveragingDesign lp_design(const Representation& rep, const linalg::Superoperator& target,
                          const DesignOptions& opt) {
  const auto& alg = rep.algebra();
  RealVector b(2 * target.matrix.size() + 1);
  b << real_coords(target.matrix), 1.0;

  std::vector<RealVector> coords;
  std::vector<ComplexMatrix> us;
  int round = 0;
  for (int pool = std::max(opt.pool_size, 1); pool <= std::max(opt.max_pool, opt.pool_size); pool *= 2, ++round) {
    random::Rng rng(random::derive_seed(opt.seed, static_cast<std::uint64_t>(round)));
    while (static_cast<int>(us.size()) < pool) {
      coords.push_back(alg.haar_coordinates(rng));
      us.push_back(rep.group(coords.back()));
    }
    const Eigen::MatrixXd m = coordinate_matrix(us);
    // Compress the equality constraints to an independent subset.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-10);
    const Eigen::Index r = qr.rank();
    const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).leftCols(r);
    const RealVector bq = q.transpose() * b;
    if ((q * bq - b).norm() > 1e-9 * b.norm()) continue;
    const auto sol = lp::find_feasible_point(q.transpose() * m, bq, 1e-9);
    if (!sol.feasible) continue;

    AveragingDesign d;
    d.method = "lp";
    d.pool_size = pool;
    std::vector<Eigen::Index> support;
    for (int j : sol.basis) {
      if (sol.x(j) > 0.0) support.push_back(j);
    }
    // Polish the basic weights on the uncompressed system.
    Eigen::MatrixXd ms(m.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) ms.col(static_cast<Eigen::Index>(k)) = m.col(support[k]);
    RealVector alpha = ms.colPivHouseholderQr().solve(b);
    if ((alpha.array() < 0.0).any()) {
      for (std::size_t k = 0; k < support.size(); ++k) alpha(static_cast<Eigen::Index>(k)) = sol.x(support[k]);
    }
    alpha /= alpha.sum();
    for (std::size_t k = 0; k < support.size(); ++k) {
      d.coords.push_back(coords[support[k]]);
      d.unitaries.push_back(us[support[k]]);
      d.weights.push_back(alpha(static_cast<Eigen::Index>(k)));
    }
    return d;
  }
  std::ostringstream os;
  os << "find_design: LP infeasible up to a pool of " << opt.max_pool << " Haar samples";
  throw PoolExhaustedError(os.str());
}

}  // namespace

int caratheodory_cap(int n) { return n * n + 4 * n + 2; }

io::json AveragingDesign::to_json() const {
  io::json j;
  j["m"] = size();
  j["weights"] = weights;
  j["residual"] = residual;
  j["method"] = method;
  j["reduced"] = reduced;
  j["unitaries"] = io::json::array();
  for (const auto& u : unitaries) j["unitaries"].push_back(io::matrix_to_json(u));
  if (!coords.empty()) {
    j["coords"] = io::json::array();
    for (const auto& c : coords) j["coords"].push_back(std::vector<double>(c.data(), c.data() + c.size()));
  }
  if (pool_size > 0) j["pool_size"] = pool_size;
  return j;
}

linalg::Superoperator twirl_superoperator(const Representation& rep) {
  std::vector<linalg::HermitianOperator> gens;
  for (const auto& img : rep.images()) gens.push_back(linalg::HermitianOperator::hermitian_part(cd(0.0, -1.0) * img));
  return fixedpoint::commutant_basis(gens, rep.dim()).projector();
}

linalg::Superoperator design_channel(const std::vector<ComplexMatrix>& unitaries, const std::vector<double>& weights) {
  if (unitaries.empty() || unitaries.size() != weights.size()) {
    throw DimensionError("design_channel: need one weight per unitary");
  }
  const int n = static_cast<int>(unitaries.front().rows());
  linalg::Superoperator s{n, ComplexMatrix::Zero(n * n, n * n)};
  for (std::size_t j = 0; j < unitaries.size(); ++j) s.matrix += weights[j] * conjugation_superop(unitaries[j]);
  return s;
}

double verify_design(const AveragingDesign& d, const linalg::Superoperator& target) {
  const auto s = design_channel(d.unitaries, d.weights);
  if (s.dim != target.dim) throw DimensionError("verify_design: dimension mismatch");
  return column_residual(s.matrix, target.matrix);
}

AveragingDesign reduce_support(const AveragingDesign& d) {
  if (d.size() <= 1) return d;
  AveragingDesign cur = d;
  const auto original = design_channel(d.unitaries, d.weights);
  for (int guard = 0; guard < d.size(); ++guard) {
    const Eigen::MatrixXd m = coordinate_matrix(cur.unitaries);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    if (lu.rank() == m.cols()) break;
    RealVector z = lu.kernel().col(0);
    if ((m * z).norm() > 1e-9 * z.norm() * std::max(1.0, m.norm())) break;
    if (z.maxCoeff() <= 0.0) z = -z;
    // Largest step keeping the weights nonnegative; it zeroes one of them.
    double step = std::numeric_limits<double>::infinity();
    Eigen::Index hit = -1;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      if (z(k) > 1e-14 && cur.weights[k] / z(k) < step) {
        step = cur.weights[k] / z(k);
        hit = k;
      }
    }
    if (hit < 0) break;
    AveragingDesign next = cur;
    next.coords.clear();
    next.unitaries.clear();
    next.weights.clear();
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      const double w = k == hit ? 0.0 : cur.weights[k] - step * z(k);
      if (w <= 1e-15) continue;
      if (!cur.coords.empty()) next.coords.push_back(cur.coords[k]);
      next.unitaries.push_back(cur.unitaries[k]);
      next.weights.push_back(w);
    }
    const double total = std::accumulate(next.weights.begin(), next.weights.end(), 0.0);
    for (auto& w : next.weights) w /= total;
    cur = std::move(next);
  }
  const double drift = column_residual(design_channel(cur.unitaries, cur.weights).matrix, original.matrix);
  if (drift > kVerify) {
    AveragingDesign out = d;
    out.reduced = false;
    return out;
  }
  cur.residual = d.residual + drift;
  cur.reduced = true;
  return cur;
}

AveragingDesign conjugate(const AveragingDesign& d, const ComplexMatrix& v) {
  AveragingDesign out = d;
  out.coords.clear();
  for (auto& u : out.unitaries) u = v * u * v.adjoint();
  return out;
}

AveragingDesign find_design(const Representation& rep, const linalg::Superoperator& target,
                            const DesignOptions& options) {
  if (target.dim != rep.dim()) throw DimensionError("find_design: target dimension");
  if (linalg::max_abs(target.matrix - twirl_superoperator(rep).matrix) > kVerify) {
    throw InvalidInput("find_design: target is not the Haar twirl of the representation");
  }
  AveragingDesign d;
  bool found = false;
  if (options.shortcuts) {
    for (auto& c : closed_form_candidates(rep)) {
      if (verify_design(c, target) <= kExact) {
        d = std::move(c);
        found = true;
        break;
      }
    }
  }
  if (!found) d = lp_design(rep, target, options);
  d = finalize(std::move(d), target);
  if (d.residual > kVerify) {
    std::ostringstream os;
    os << "find_design: residual " << d.residual << " above " << kVerify;
    throw NumericalError(os.str());
  }
  if (!linalg::is_completely_positive(design_channel(d.unitaries, d.weights))) {
    throw NumericalError("find_design: design channel is not completely positive");
  }
  return d;
}

AveragingDesign find_design(const Representation& rep, const DesignOptions& options) {
  return find_design(rep, twirl_superoperator(rep), options);
}

}  // namespace clsi::design
