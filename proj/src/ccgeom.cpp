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

#include "clsi/ccgeom.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "clsi/errors.hpp"
#include "clsi/optimize.hpp"
#include "clsi/random.hpp"

namespace clsi::ccgeom {

using liegroup::GroupKind;
using liegroup::HorizontalSystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSmoothing = 1e-5;

// Rows are the orthonormal frame in algebra coordinates.
Eigen::MatrixXd frame(const HorizontalSystem& h) {
  const int s = h.size();
  Eigen::MatrixXd o(s, h.algebra().dim());
  for (int k = 0; k < s; ++k) o.row(k) = h.orthonormal()[k].transpose();
  return o;
}

class PathProblem {
 public:
  PathProblem(const HorizontalSystem& h, const ComplexMatrix& target, int k)
      : h_(h), target_(target), k_(k), s_(h.size()), o_(frame(h)) {}

  int size() const { return k_ * s_; }

  ComplexMatrix endpoint(const RealVector& x) const {
    const auto& alg = h_.algebra();
    ComplexMatrix g = ComplexMatrix::Identity(alg.defining_dim(), alg.defining_dim());
    for (int i = 0; i < k_; ++i) {
      const RealVector c = o_.transpose() * x.segment(i * s_, s_);
      g = g * alg.exp(c);
    }
    return g;
  }

  RealVector residual(const RealVector& x) const {
    const ComplexMatrix d = endpoint(x) - target_;
    RealVector r(2 * d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      r(i) = d.data()[i].real();
      r(d.size() + i) = d.data()[i].imag();
    }
    return r;
  }

  double cost(const RealVector& x) const { return residual(x).squaredNorm(); }

  Eigen::MatrixXd jacobian(const RealVector& x) const {
    const double step = 1e-7;
    const Eigen::Index m = 2 * target_.size();
    Eigen::MatrixXd j(m, size());
    RealVector xp = x;
    for (int i = 0; i < size(); ++i) {
      xp(i) = x(i) + step;
      const RealVector rp = residual(xp);
      xp(i) = x(i) - step;
      const RealVector rm = residual(xp);
      xp(i) = x(i);
      j.col(i) = (rp - rm) / (2.0 * step);
    }
    return j;
  }

  double length(const RealVector& x) const {
    double l = 0.0;
    for (int i = 0; i < k_; ++i) l += x.segment(i * s_, s_).norm();
    return l;
  }

  double smooth_length(const RealVector& x) const {
    double l = 0.0;
    for (int i = 0; i < k_; ++i) {
      l += std::sqrt(x.segment(i * s_, s_).squaredNorm() + kSmoothing * kSmoothing) - kSmoothing;
    }
    return l;
  }

  HorizontalPath to_path(const RealVector& x) const {
    HorizontalPath p;
    for (int i = 0; i < k_; ++i) p.segments.push_back(x.segment(i * s_, s_));
    return p;
  }

  RealVector from_path(const HorizontalPath& p) const {
    RealVector x(size());
    for (int i = 0; i < k_; ++i) x.segment(i * s_, s_) = p.segments[i];
    return x;
  }

  // Principal logarithm of the target projected on the horizontal span and
  // split evenly over the segments.
  RealVector principal_init() const {
    const auto& alg = h_.algebra();
    RealVector c = RealVector::Zero(alg.dim());
    if (alg.kind() == GroupKind::Torus) {
      for (int k = 0; k < alg.dim(); ++k) c(k) = std::arg(target_(k, k));
    } else {
      const double w = 0.5 * target_.trace().real();
      const ComplexMatrix m = cd(0.0, 1.0) * (target_ - w * ComplexMatrix::Identity(2, 2));
      Eigen::Vector3d v;
      for (int k = 0; k < 3; ++k) v(k) = 0.5 * (linalg::pauli(k + 1) * m).trace().real();
      const double nv = v.norm();
      if (nv > 1e-14) {
        c = (2.0 * std::atan2(nv, w) / nv) * v;
      } else if (w < 0.0) {
        c = 2.0 * M_PI * h_.orthonormal().front();
      }
    }
    const RealVector p = o_ * c;
    RealVector x(size());
    for (int i = 0; i < k_; ++i) x.segment(i * s_, s_) = p / static_cast<double>(k_);
    return x;
  }

 private:
  const HorizontalSystem& h_;
  ComplexMatrix target_;
  int k_;
  int s_;
  Eigen::MatrixXd o_;
};

// Levenberg-Marquardt on ||r(x)||^2.
RealVector levenberg_marquardt(const PathProblem& pb, RealVector x, double goal, int max_iter) {
  RealVector r = pb.residual(x);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < max_iter && cost > goal; ++it) {
    const Eigen::MatrixXd j = pb.jacobian(x);
    const Eigen::MatrixXd a = j.transpose() * j;
    const RealVector g = j.transpose() * r;
    bool improved = false;
    while (mu < 1e12) {
      Eigen::MatrixXd damped = a;
      damped.diagonal().array() += mu;
      const RealVector step = damped.ldlt().solve(-g);
      const RealVector xn = x + step;
      const RealVector rn = pb.residual(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return x;
}

// Minimum-norm Gauss-Newton corrections; barely moves a nearly feasible path.
RealVector project(const PathProblem& pb, RealVector x, double goal) {
  double cost = pb.cost(x);
  for (int it = 0; it < 30 && cost > goal; ++it) {
    const Eigen::MatrixXd j = pb.jacobian(x);
    const RealVector r = pb.residual(x);
    const RealVector step = j.completeOrthogonalDecomposition().solve(-r);
    const RealVector xn = x + step;
    const double cn = pb.cost(xn);
    if (!(cn < cost)) break;
    x = xn;
    cost = cn;
  }
  if (cost > goal) x = levenberg_marquardt(pb, x, goal, 100);
  return x;
}

RealVector optimize_from(const PathProblem& pb, RealVector x, const CcOptions& opt) {
  const double goal = 1e-2 * opt.tolerance;
  x = levenberg_marquardt(pb, std::move(x), goal, 100);
  opt::LbfgsOptions lb;
  lb.max_iterations = opt.opt_budget;
  lb.gradient_tol = 1e-10;
  lb.relative_tol = 1e-12;
  for (double mu : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}) {
    auto f = opt::with_central_differences(
        [&](const RealVector& v) { return pb.smooth_length(v) + mu * pb.cost(v); }, 1e-7);
    x = opt::minimize_lbfgs(f, x, lb).x;
  }
  return project(pb, std::move(x), goal);
}

}  // namespace

double HorizontalPath::length() const {
  double l = 0.0;
  for (const auto& v : segments) l += v.norm();
  return l;
}

ComplexMatrix path_endpoint(const HorizontalSystem& h, const HorizontalPath& path) {
  for (const auto& v : path.segments) {
    if (v.size() != h.size()) throw DimensionError("path_endpoint: control length mismatch");
  }
  const auto& alg = h.algebra();
  const Eigen::MatrixXd o = frame(h);
  ComplexMatrix g = ComplexMatrix::Identity(alg.defining_dim(), alg.defining_dim());
  for (const auto& v : path.segments) g = g * alg.exp(o.transpose() * v);
  return g;
}

HorizontalPath fit_segments(const HorizontalPath& path, int k) {
  HorizontalPath p = path;
  while (!p.segments.empty() && 2 * p.size() <= k) {
    HorizontalPath q;
    for (const auto& v : p.segments) {
      q.segments.push_back(0.5 * v);
      q.segments.push_back(0.5 * v);
    }
    p = std::move(q);
  }
  const Eigen::Index s = path.segments.empty() ? 0 : path.segments.front().size();
  while (p.size() < k) p.segments.push_back(RealVector::Zero(s));
  return p;
}

HorizontalPath embed_path(const HorizontalSystem& from, const HorizontalSystem& to,
                          const HorizontalPath& path) {
  if (from.algebra().kind() != to.algebra().kind() || from.algebra().dim() != to.algebra().dim()) {
    throw InvalidInput("embed_path: systems live on different groups");
  }
  const Eigen::MatrixXd of = frame(from), ot = frame(to);
  HorizontalPath out;
  for (const auto& v : path.segments) {
    const RealVector c = of.transpose() * v;
    const RealVector w = ot * c;
    if ((ot.transpose() * w - c).norm() > 1e-9 * std::max(1.0, c.norm())) {
      throw InvalidInput("embed_path: source directions are not contained in the target span");
    }
    out.segments.push_back(w);
  }
  return out;
}

DistanceResult cc_distance_upper(const HorizontalSystem& h, const ComplexMatrix& target,
                                 const CcOptions& options, const HorizontalPath* warm) {
  if (!liegroup::hormander_check(h).is_hormander) {
    throw InvalidInput("cc_distance_upper: directions do not satisfy the Hormander condition");
  }
  const int dd = h.algebra().defining_dim();
  if (target.rows() != dd || target.cols() != dd) throw DimensionError("cc_distance_upper: target dimension");

  int k = std::max(options.segments, 1);
  if (warm != nullptr) k = std::max(k, warm->size());
  const PathProblem pb(h, target, k);

  DistanceResult best;
  best.length = kInf;
  best.residual = kInf;
  double best_residual_any = kInf;

  auto consider = [&](const RealVector& x) {
    const double c = pb.cost(x);
    best_residual_any = std::min(best_residual_any, c);
    if (c > options.tolerance) return;
    const double l = pb.length(x);
    if (l < best.length) {
      best.length = l;
      best.residual = c;
      best.path = pb.to_path(x);
    }
  };

  std::vector<RealVector> starts;
  if (warm != nullptr) {
    const RealVector xw = pb.from_path(fit_segments(*warm, k));
    consider(xw);
    starts.push_back(xw);
  }
  const RealVector x0 = pb.principal_init();
  consider(x0);
  starts.push_back(x0);

  const double scale = std::max(1.0, x0.norm() * std::sqrt(static_cast<double>(k))) /
                       static_cast<double>(k);
  for (int r = 1; r < options.restarts; ++r) {
    random::Rng rng(random::derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> g(0.0, 1.0);
    RealVector x(pb.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = 2.0 * scale * g(rng);
    starts.push_back(x);
  }

  for (const auto& s : starts) consider(optimize_from(pb, s, options));

  if (!std::isfinite(best.length)) {
    std::ostringstream os;
    os << "cc_distance_upper: endpoint tolerance " << options.tolerance << " not reached";
    throw UnreachedTargetError(os.str(), best_residual_any);
  }
  return best;
}

io::json DiameterResult::to_json() const {
  io::json j;
  j["d_X"] = d_X;
  j["targets"] = io::json::array();
  for (const auto& t : targets) {
    io::json row;
    row["label"] = t.label;
    row["coords"] = std::vector<double>(t.coords.data(), t.coords.data() + t.coords.size());
    row["length"] = t.length;
    row["residual"] = t.residual;
    row["segments"] = t.path.size();
    j["targets"].push_back(row);
  }
  return j;
}

namespace {

TargetRecord solve_target(const HorizontalSystem& h, std::string label, const RealVector& coords,
                          const CcOptions& options, std::size_t index, const HorizontalPath* warm) {
  TargetRecord rec;
  rec.label = std::move(label);
  rec.coords = coords;
  rec.target = h.algebra().exp(coords);
  CcOptions o = options;
  o.seed = random::derive_seed(options.seed, index);
  try {
    const auto res = cc_distance_upper(h, rec.target, o, warm);
    rec.length = res.length;
    rec.residual = res.residual;
    rec.path = res.path;
  } catch (const UnreachedTargetError& e) {
    throw UnreachedTargetError("cc_diameter: target " + rec.label + ": " + e.what(), e.residual());
  }
  return rec;
}

}  // namespace

DiameterResult cc_diameter(const HorizontalSystem& h, int n_targets, const CcOptions& options) {
  const auto& alg = h.algebra();
  std::vector<std::pair<std::string, RealVector>> targets;
  if (alg.kind() == GroupKind::SU2) {
    targets.emplace_back("-I", 2.0 * M_PI * RealVector::Unit(3, 0));
    const char* names[] = {"X", "Y", "Z"};
    for (int k = 0; k < 3; ++k) {
      for (int q = 1; q <= 3; ++q) {
        std::ostringstream os;
        os << "exp(" << q << "pi/2 " << names[k] << ")";
        targets.emplace_back(os.str(), 0.5 * M_PI * q * RealVector::Unit(3, k));
      }
    }
  } else {
    const int d = alg.dim();
    for (int mask = 1; mask < (1 << d); ++mask) {
      RealVector c = RealVector::Zero(d);
      std::string label = "vertex(";
      for (int k = 0; k < d; ++k) {
        if (mask & (1 << k)) c(k) = M_PI;
        label += (mask & (1 << k)) ? "pi" : "0";
        label += k + 1 < d ? "," : ")";
      }
      targets.emplace_back(label, c);
    }
  }
  random::Rng rng(random::derive_seed(options.seed, 0xd1a3ULL));
  for (int t = 0; t < n_targets; ++t) {
    targets.emplace_back("haar" + std::to_string(t), alg.haar_coordinates(rng));
  }

  DiameterResult out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out.targets.push_back(solve_target(h, targets[i].first, targets[i].second, options, i, nullptr));
    out.d_X = std::max(out.d_X, out.targets.back().length);
  }
  return out;
}

DiameterResult cc_diameter_warm(const HorizontalSystem& h, const DiameterResult& previous,
                                const HorizontalSystem& previous_system, const CcOptions& options) {
  DiameterResult out;
  for (std::size_t i = 0; i < previous.targets.size(); ++i) {
    const auto& rec = previous.targets[i];
    const HorizontalPath warm = embed_path(previous_system, h, rec.path);
    out.targets.push_back(solve_target(h, rec.label, rec.coords, options, i, &warm));
    out.d_X = std::max(out.d_X, out.targets.back().length);
  }
  return out;
}

}  // namespace clsi::ccgeom
