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

#include "clsi/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "clsi/errors.hpp"
#include "clsi/optimize.hpp"
#include "clsi/random.hpp"

namespace clsi::interval {

namespace {

using Eig = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;

constexpr double kNearFixed = 1e-14;

ComplexMatrix spectral_apply(const Eig& e, double (*f)(double)) {
  RealVector v = e.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = f(v(i));
  return e.eigenvectors() * v.cast<cd>().asDiagonal() * e.eigenvectors().adjoint();
}

ComplexMatrix matrix_log(const ComplexMatrix& a) {
  const Eig e(a);
  if (e.eigenvalues().minCoeff() <= 0.0) throw DomainError("interval: grid value is not positive definite");
  return spectral_apply(e, [](double t) { return std::log(t); });
}

ComplexMatrix mean(const WeightedInterval& w, const MatrixFunction& f) {
  ComplexMatrix m = ComplexMatrix::Zero(f.front().rows(), f.front().cols());
  for (int i = 0; i < w.size(); ++i) m += w.weights()(i) * f[i];
  return m;
}

void check_function(const WeightedInterval& w, const MatrixFunction& f) {
  if (static_cast<int>(f.size()) != w.size()) throw DimensionError("interval: grid function size");
  for (const auto& v : f) {
    if (v.rows() != f.front().rows() || v.cols() != v.rows()) throw DimensionError("interval: matrix size");
  }
}

double entropy_from(const WeightedInterval& w, const MatrixFunction& f, const MatrixFunction& logs) {
  const ComplexMatrix m = mean(w, f);
  double d = -(m * matrix_log(m)).trace().real();
  for (int i = 0; i < w.size(); ++i) d += w.weights()(i) * (f[i] * logs[i]).trace().real();
  return d;
}

double fisher_from(const WeightedInterval& w, const MatrixFunction& f, const MatrixFunction& logs) {
  double s = 0.0;
  for (std::size_t e = 0; e < w.edges().size(); ++e) {
    const auto [i, j] = w.edges()[e];
    s += w.edge_conductance()(static_cast<Eigen::Index>(e)) * ((f[j] - f[i]) * (logs[j] - logs[i])).trace().real();
  }
  return s;
}

// Hermitian d x d <-> d^2 real parameters (diagonal, then Re/Im of the upper
// triangle).
ComplexMatrix unpack(const double* p, int d) {
  ComplexMatrix h(d, d);
  int k = 0;
  for (int a = 0; a < d; ++a) h(a, a) = p[k++];
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      h(a, b) = cd(p[k], p[k + 1]);
      h(b, a) = std::conj(h(a, b));
      k += 2;
    }
  }
  return h;
}

void pack_gradient(const ComplexMatrix& g, double* out, int d) {
  int k = 0;
  for (int a = 0; a < d; ++a) out[k++] = g(a, a).real();
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      out[k++] = 2.0 * g(a, b).real();
      out[k++] = 2.0 * g(a, b).imag();
    }
  }
}

void pack(const ComplexMatrix& h, double* out, int d) {
  int k = 0;
  for (int a = 0; a < d; ++a) out[k++] = h(a, a).real();
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      out[k++] = h(a, b).real();
      out[k++] = h(a, b).imag();
    }
  }
}

// Frechet derivative of exp at H (eigen-decomposed) applied to M.
ComplexMatrix dexp(const Eig& e, const ComplexMatrix& m) {
  const RealVector& l = e.eigenvalues();
  const ComplexMatrix& u = e.eigenvectors();
  ComplexMatrix t = u.adjoint() * m * u;
  for (Eigen::Index a = 0; a < l.size(); ++a) {
    for (Eigen::Index b = 0; b < l.size(); ++b) {
      const double diff = l(a) - l(b);
      const double g = std::abs(diff) < 1e-12 ? std::exp(0.5 * (l(a) + l(b)))
                                              : std::exp(l(b)) * std::expm1(diff) / diff;
      t(a, b) *= g;
    }
  }
  return u * t * u.adjoint();
}

// Ratio I/(2D) of f = exp(H) and its gradient in the packed parameters.
class RatioObjective {
 public:
  RatioObjective(const WeightedInterval& w, int d) : w_(w), d_(d), p_(d * d) {}

  int size() const { return w_.size() * p_; }

  double operator()(const RealVector& x, RealVector* grad) const {
    const int n = w_.size();
    std::vector<Eig> eig;
    eig.reserve(n);
    MatrixFunction h(n), f(n);
    for (int i = 0; i < n; ++i) {
      h[i] = unpack(x.data() + i * p_, d_);
      eig.emplace_back(h[i]);
      f[i] = spectral_apply(eig.back(), [](double t) { return std::exp(t); });
    }
    const ComplexMatrix m = mean(w_, f);
    const ComplexMatrix logm = matrix_log(m);
    double d = -(m * logm).trace().real();
    for (int i = 0; i < n; ++i) d += w_.weights()(i) * (f[i] * h[i]).trace().real();
    const double fi = fisher_from(w_, f, h);
    const double scale = m.trace().real();
    if (!(d > kNearFixed * scale)) return std::numeric_limits<double>::infinity();
    const double r = fi / (2.0 * d);
    if (grad != nullptr) {
      grad->resize(size());
      MatrixFunction direct(n, ComplexMatrix::Zero(d_, d_)), inner(n, ComplexMatrix::Zero(d_, d_));
      for (std::size_t e = 0; e < w_.edges().size(); ++e) {
        const auto [i, j] = w_.edges()[e];
        const double c = w_.edge_conductance()(static_cast<Eigen::Index>(e));
        const ComplexMatrix df = c * (f[j] - f[i]);
        const ComplexMatrix dh = c * (h[j] - h[i]);
        direct[j] += df;
        direct[i] -= df;
        inner[j] += dh;
        inner[i] -= dh;
      }
      for (int k = 0; k < n; ++k) {
        const ComplexMatrix mk = inner[k] - 2.0 * r * w_.weights()(k) * (h[k] - logm);
        const ComplexMatrix g = (direct[k] + dexp(eig[k], mk)) / (2.0 * d);
        pack_gradient(g, grad->data() + k * p_, d_);
      }
    }
    return r;
  }

 private:
  const WeightedInterval& w_;
  int d_;
  int p_;
};

ComplexMatrix random_direction(int d, random::Rng& rng) {
  if (d == 1) {
    std::normal_distribution<double> g(0.0, 1.0);
    return ComplexMatrix::Constant(1, 1, g(rng));
  }
  return random::hermitian(d, rng).matrix();
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

WeightedInterval WeightedInterval::build(const std::function<double(double)>& h, int n, bool periodic) {
  if (n < 16) throw InvalidInput("build_interval: need at least 16 grid points");
  RealVector s(n);
  for (int i = 0; i < n; ++i) s(i) = h((i + 0.5) / n);
  return from_samples(s, periodic);
}

WeightedInterval WeightedInterval::from_samples(const RealVector& h, bool periodic) {
  const int n = static_cast<int>(h.size());
  if (n < 16) throw InvalidInput("build_interval: need at least 16 grid points");
  for (int i = 0; i < n; ++i) {
    if (!(h(i) > 0.0) || !std::isfinite(h(i))) {
      std::ostringstream os;
      os << "build_interval: density " << h(i) << " at grid point " << i << " is not positive";
      throw InvalidInput(os.str());
    }
  }
  WeightedInterval w;
  w.periodic_ = periodic;
  w.x_ = RealVector::LinSpaced(n, 0.5 / n, 1.0 - 0.5 / n);
  w.h_ = h;
  w.w_ = h / h.sum();
  const int ne = periodic ? n : n - 1;
  w.c_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const int i = e, j = (e + 1) % n;
    w.edges_.emplace_back(i, j);
    w.c_(e) = 0.5 * (w.w_(i) + w.w_(j)) * static_cast<double>(n) * n;
  }
  return w;
}

Eigen::MatrixXd WeightedInterval::laplacian() const {
  const int n = size();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [i, j] = edges_[e];
    const double c = c_(static_cast<Eigen::Index>(e));
    l(i, i) += c / w_(i);
    l(j, j) += c / w_(j);
    l(i, j) -= c / w_(i);
    l(j, i) -= c / w_(j);
  }
  return l;
}

RealVector WeightedInterval::apply_laplacian(const RealVector& f) const {
  if (f.size() != size()) throw DimensionError("apply_laplacian: size");
  RealVector out = RealVector::Zero(size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [i, j] = edges_[e];
    const double flux = c_(static_cast<Eigen::Index>(e)) * (f(j) - f(i));
    out(i) -= flux / w_(i);
    out(j) += flux / w_(j);
  }
  return out;
}

double WeightedInterval::self_adjointness_residual() const {
  const Eigen::MatrixXd a = w_.asDiagonal() * laplacian();
  return (a - a.transpose()).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff();
}

namespace {

// W^{1/2} Delta W^{-1/2}, assembled edge by edge so it is exactly symmetric.
Eigen::MatrixXd symmetric_form(const WeightedInterval& w) {
  const int n = w.size();
  const RealVector& mu = w.weights();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < w.edges().size(); ++e) {
    const auto [i, j] = w.edges()[e];
    const double c = w.edge_conductance()(static_cast<Eigen::Index>(e));
    s(i, i) += c / mu(i);
    s(j, j) += c / mu(j);
    const double off = c / std::sqrt(mu(i) * mu(j));
    s(i, j) -= off;
    s(j, i) -= off;
  }
  return s;
}

}  // namespace

RealVector WeightedInterval::spectrum() const {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(symmetric_form(*this), Eigen::EigenvaluesOnly)
      .eigenvalues();
}

std::pair<RealVector, Eigen::MatrixXd> WeightedInterval::eigenpairs() const {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_form(*this));
  return {es.eigenvalues(), w_.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors()};
}

double WeightedInterval::spectral_gap() const {
  const RealVector ev = spectrum();
  const double thr = 1e-9 * std::max(1.0, ev.maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > thr) return ev(i);
  }
  throw DegenerateGeneratorError("spectral_gap: Laplacian has no nonzero eigenvalue");
}

double interval_entropy(const WeightedInterval& w, const MatrixFunction& f) {
  check_function(w, f);
  MatrixFunction logs;
  for (const auto& v : f) logs.push_back(matrix_log(v));
  return entropy_from(w, f, logs);
}

double interval_fisher(const WeightedInterval& w, const MatrixFunction& f) {
  check_function(w, f);
  MatrixFunction logs;
  for (const auto& v : f) logs.push_back(matrix_log(v));
  return fisher_from(w, f, logs);
}

double interval_mlsi_ratio(const WeightedInterval& w, const MatrixFunction& f) {
  check_function(w, f);
  MatrixFunction logs;
  for (const auto& v : f) logs.push_back(matrix_log(v));
  const double d = entropy_from(w, f, logs);
  if (d <= kNearFixed * mean(w, f).trace().real()) {
    throw NearFixedPointError("interval_mlsi_ratio: relative entropy vanishes");
  }
  return fisher_from(w, f, logs) / (2.0 * d);
}

io::json IntervalMlsiEstimate::to_json() const {
  io::json j;
  j["lambda_est"] = lambda_est;
  j["linearized_ratio"] = linearized_ratio;
  j["gap"] = gap;
  j["matrix_dim"] = matrix_dim;
  j["grid"] = grid;
  j["periodic"] = periodic;
  j["samples_used"] = samples_used;
  j["optimizer_iterations"] = optimizer_iterations;
  j["convention"] = convention;
  j["convention_note"] =
      "lambda_est = inf I/(2D); the unnormalized inequality lambda D <= I has constant 2 lambda_est";
  return j;
}

IntervalMlsiEstimate interval_mlsi_estimate(const WeightedInterval& w, int matrix_dim,
                                            const IntervalMlsiOptions& options) {
  if (matrix_dim < 1) throw InvalidInput("interval_mlsi_estimate: matrix dimension must be positive");
  const int n = w.size();
  const int d = matrix_dim;
  const int p = d * d;
  const auto [values, vectors] = w.eigenpairs();
  const double thr = 1e-9 * std::max(1.0, values.maxCoeff());
  int first = 0;
  while (first < n && values(first) <= thr) ++first;
  if (first >= n) throw DegenerateGeneratorError("interval_mlsi_estimate: no nonzero eigenvalue");

  IntervalMlsiEstimate est;
  est.gap = values(first);
  est.matrix_dim = d;
  est.grid = n;
  est.periodic = w.periodic();

  auto mode = [&](int k) {
    RealVector v = vectors.col(std::min(first + k, n - 1));
    return RealVector(v / v.cwiseAbs().maxCoeff());
  };

  // Linearization along the first nonzero mode.
  {
    const double eps = 1e-3;
    const RealVector phi = mode(0);
    MatrixFunction f(n);
    for (int i = 0; i < n; ++i) f[i] = ComplexMatrix::Constant(1, 1, 1.0 + eps * phi(i));
    MatrixFunction logs;
    for (const auto& v : f) logs.push_back(matrix_log(v));
    est.linearized_ratio = fisher_from(w, f, logs) / entropy_from(w, f, logs);
  }

  const RatioObjective objective(w, d);
  std::vector<std::pair<double, RealVector>> scored;
  for (int s = 0; s < options.samples; ++s) {
    random::Rng rng(random::derive_seed(options.seed, static_cast<std::uint64_t>(s)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    MatrixFunction h(n, ComplexMatrix::Zero(d, d));
    if (s % 2 == 0) {
      // Near the fixed point along the lowest modes.
      const double eps = 1e-3 * std::pow(10.0, unif(rng));
      for (int k = 0; k < 3; ++k) {
        const RealVector phi = mode(k);
        const ComplexMatrix a = random_direction(d, rng) * (eps / (1.0 + k));
        for (int i = 0; i < n; ++i) h[i] += phi(i) * a;
      }
    } else {
      const double amp = 0.5 + 2.5 * unif(rng);
      for (int k = 0; k < 6; ++k) {
        const RealVector phi = mode(k);
        const ComplexMatrix a = random_direction(d, rng) * (amp / (1.0 + k));
        for (int i = 0; i < n; ++i) h[i] += phi(i) * a;
      }
    }
    RealVector x(n * p);
    for (int i = 0; i < n; ++i) pack(h[i], x.data() + i * p, d);
    const double r = objective(x, nullptr);
    if (std::isfinite(r)) scored.emplace_back(r, std::move(x));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  est.samples_used = static_cast<int>(scored.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& sc : scored) best = std::min(best, sc.first);

  opt::LbfgsOptions lb;
  lb.max_iterations = options.opt_budget;
  lb.gradient_tol = 1e-9;
  lb.relative_tol = 1e-12;
  const int refine = std::min<int>(options.refine_count, static_cast<int>(scored.size()));
  for (int r = 0; r < refine; ++r) {
    const auto res = opt::minimize_lbfgs(
        [&](const RealVector& x, RealVector* g) { return objective(x, g); }, scored[r].second, lb);
    est.optimizer_iterations += res.iterations;
    if (std::isfinite(res.value)) best = std::min(best, res.value);
  }
  if (d > 1) {
    // f -> f I_d leaves both D and I scaled by d.
    const auto scalar = interval_mlsi_estimate(w, 1, options);
    best = std::min(best, scalar.lambda_est);
    est.samples_used += scalar.samples_used;
    est.optimizer_iterations += scalar.optimizer_iterations;
  }
  if (!std::isfinite(best)) throw NumericalError("interval_mlsi_estimate: no finite ratio found");
  if (best > 1.05 * est.gap) {
    std::ostringstream os;
    os << "interval_mlsi_estimate: estimate " << best << " exceeds the spectral gap " << est.gap;
    throw NumericalError(os.str());
  }
  est.lambda_est = best;
  return est;
}

CurvatureCheck curvature_lower_bound(const DensityExpr& f, double k, int grid) {
  if (grid < 16) throw InvalidInput("curvature_lower_bound: grid too small");
  CurvatureCheck out;
  out.k = k;
  out.a = std::numeric_limits<double>::infinity();
  out.ricci_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 0.5) / grid;
    const Jet j = f.jet(x);
    const double expr = k * j.v * j.v - j.d2 * j.v - j.d1 * j.d1;
    const double ric = 2.0 * k + (j.d1 * j.d1 - j.v * j.d2) / (j.v * j.v);
    if (!std::isfinite(expr) || !std::isfinite(ric) || !(j.v > 0.0)) {
      out.window_shrunk = true;
      continue;
    }
    if (expr < out.a) {
      out.a = expr;
      out.argmin = x;
    }
    out.ricci_min = std::min(out.ricci_min, ric);
  }
  if (!std::isfinite(out.a)) throw NumericalError("curvature_lower_bound: density not evaluable on the grid");
  out.holds = out.a > 0.0;
  if (out.holds) {
    out.bound_closed = 2.0 * std::exp(-k);
    out.bound_open = 0.5 * std::exp(-k);
  }
  return out;
}

BakryEmeryCheck bakry_emery_check(const DensityExpr& rho, int grid) {
  if (grid < 16) throw InvalidInput("bakry_emery_check: grid too small");
  BakryEmeryCheck out;
  out.kappa_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const Jet j = rho.jet(x);
    const double v = (j.d1 * j.d1 - j.v * j.d2) / (j.v * j.v);
    if (!std::isfinite(v) || !(j.v > 0.0)) {
      out.window_shrunk = true;
      continue;
    }
    if (v < out.kappa_min) {
      out.kappa_min = v;
      out.argmin = x;
    }
  }
  if (!std::isfinite(out.kappa_min)) throw NumericalError("bakry_emery_check: density not evaluable on the grid");
  return out;
}

MeasureComparison change_of_measure_bound(const DensityExpr& mu, const DensityExpr& nu, double clsi_nu, int grid) {
  if (grid < 16) throw InvalidInput("change_of_measure_bound: grid too small");
  if (!(clsi_nu >= 0.0)) throw InvalidInput("change_of_measure_bound: clsi_nu must be nonnegative");
  MeasureComparison out;
  out.clsi_nu = clsi_nu;

  // Normalizations by the midpoint rule on a fine grid.
  const int nq = 1 << 16;
  double zmu = 0.0, znu = 0.0;
  for (int i = 0; i < nq; ++i) {
    const double x = (i + 0.5) / nq;
    zmu += mu(x);
    znu += nu(x);
  }
  zmu /= nq;
  znu /= nq;
  if (!(zmu > 0.0) || !(znu > 0.0)) throw InvalidInput("change_of_measure_bound: density integrates to zero");

  auto ratio = [&](double x) { return (nu(x) / znu) / (mu(x) / zmu); };
  auto evaluable = [&](double x) {
    const double r = ratio(x);
    return std::isfinite(r) && r > 0.0;
  };
  std::vector<double> xs(grid + 1);
  for (int i = 0; i <= grid; ++i) xs[i] = static_cast<double>(i) / grid;
  for (double* end : {&xs.front(), &xs.back()}) {
    if (!evaluable(*end)) {
      *end += (end == &xs.front() ? 1.0 : -1.0) * 1e-12;
      out.support_restricted = true;
    }
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  int ilo = -1, ihi = -1;
  for (int i = 0; i <= grid; ++i) {
    if (!evaluable(xs[i])) {
      out.support_restricted = true;
      continue;
    }
    const double r = ratio(xs[i]);
    if (r < lo) {
      lo = r;
      ilo = i;
    }
    if (r > hi) {
      hi = r;
      ihi = i;
    }
  }
  if (ilo < 0) throw NumericalError("change_of_measure_bound: ratio not evaluable");
  // Polish interior extrema.
  auto polish = [&](int i, bool maximize) {
    if (i <= 0 || i >= grid) return maximize ? hi : lo;
    const auto g = [&](double x) { return maximize ? ratio(x) : -ratio(x); };
    const double x = golden_max(g, xs[i - 1], xs[i + 1]);
    return maximize ? std::max(hi, ratio(x)) : std::min(lo, ratio(x));
  };
  out.ratio_inf = polish(ilo, false);
  out.ratio_sup = polish(ihi, true);
  out.factor = out.ratio_inf / out.ratio_sup;
  out.clsi_mu_bound = clsi_nu * out.factor;
  return out;
}

io::json ModifiedGaussianReport::to_json() const {
  return {{"n", n},
          {"kappa_min", kappa_min},
          {"clsi_nu", clsi_nu},
          {"factor", factor},
          {"bound_closed", bound_closed},
          {"bound_open", bound_open}};
}

ModifiedGaussianReport modified_gaussian_bound(int n, int grid) {
  if (n < 1) throw InvalidInput("modified_gaussian_bound: n must be positive");
  const std::map<std::string, double> params{{"n", static_cast<double>(n)}};
  const auto mu = DensityExpr::parse("x^(n-1)/n", params);
  const auto nu = DensityExpr::parse("x^(n-1)*exp(-x^2/2)", params);
  ModifiedGaussianReport r;
  r.n = n;
  r.kappa_min = bakry_emery_check(nu, grid).kappa_min;
  if (r.kappa_min < 1.0 - 1e-9) throw NumericalError("modified_gaussian_bound: curvature below 1");
  r.clsi_nu = 2.0;
  r.factor = change_of_measure_bound(mu, nu, r.clsi_nu, grid).factor;
  r.bound_closed = r.clsi_nu * r.factor;
  r.bound_open = 0.25 * r.bound_closed;
  return r;
}

GrowthOrderBound growth_order_bound(double alpha, double beta, double c1, double c2) {
  if (!(alpha >= 0.0) || !(alpha < beta) || !(beta >= 1.0) || !(c1 > 0.0) || !(c2 > 0.0)) {
    throw InvalidInput("growth_order_bound: need 0 <= alpha < beta, beta >= 1, c1, c2 > 0");
  }
  const double r = alpha / beta;
  const double pre = std::pow(c2, r) / c1 * std::pow(2.0 / M_PI, 0.5 * (1.0 - r));
  // For x <= 1 the factor x (1 + x^{-2}) is replaced by its value at 1.
  auto envelope = [&](double x) {
    const double t = x <= 1.0 ? 2.0 : x * (1.0 + 1.0 / (x * x));
    return pre * std::pow(t, r) * std::exp(-0.5 * x * x * (1.0 - r));
  };
  // The maximizer sits near sqrt(r / (1 - r)); scan well beyond it.
  const double xmax = 10.0 + 10.0 * std::sqrt(std::max(1.0, r / (1.0 - r)));
  const int nscan = 200000;
  double best = -1.0, arg = 0.0;
  for (int i = 0; i <= nscan; ++i) {
    const double x = xmax * i / nscan;
    const double v = envelope(x);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  const double h = xmax / nscan;
  const double xr = golden_max(envelope, std::max(0.0, arg - h), arg + h);
  if (envelope(xr) > best) {
    best = envelope(xr);
    arg = xr;
  }
  GrowthOrderBound out;
  out.sup_gprime = best;
  out.sup_gprime_sq = best * best;
  out.argmax = arg;
  out.bound = std::isfinite(out.sup_gprime_sq) ? 2.0 / out.sup_gprime_sq : 0.0;
  out.positive = out.bound > 0.0 && std::isfinite(out.bound);
  return out;
}

}  // namespace clsi::interval
