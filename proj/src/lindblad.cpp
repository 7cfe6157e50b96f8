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

#include "clsi/lindblad.hpp"

#include <cmath>
#include <sstream>

#include "clsi/errors.hpp"

namespace clsi::lindblad {

using linalg::kron;

LindbladGenerator LindbladGenerator::build(std::vector<HermitianOperator> jumps) {
  if (jumps.empty()) {
    throw DimensionError("build_generator: dimension cannot be inferred from an empty jump list");
  }
  const int n = jumps.front().dim();
  return build(std::move(jumps), n);
}

LindbladGenerator LindbladGenerator::build(std::vector<HermitianOperator> jumps, int dim) {
  if (dim <= 0) throw DimensionError("build_generator: dimension must be positive");
  for (const auto& a : jumps) {
    if (a.dim() != dim) throw DimensionError("build_generator: jump dimension mismatch");
  }
  LindbladGenerator gen;
  gen.dim_ = dim;
  gen.jumps_ = std::move(jumps);
  for (const auto& a : gen.jumps_) gen.squares_.push_back(a.matrix() * a.matrix());

  const int n = dim;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  auto data = std::make_shared<Data>();
  data->superop.dim = n;
  data->superop.matrix = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t k = 0; k < gen.jumps_.size(); ++k) {
    const ComplexMatrix& a = gen.jumps_[k].matrix();
    const ComplexMatrix& a2 = gen.squares_[k];
    // a^2 x -> I (x) a^2 ; x a^2 -> (a^2)^T (x) I ; a x a -> a^T (x) a
    data->superop.matrix += kron(id, a2) + kron(a2.transpose(), id) - 2.0 * kron(a.transpose(), a);
  }

  const double scale = std::max(1.0, linalg::max_abs(data->superop.matrix));
  const linalg::Superoperator via_commutators =
      linalg::vectorize_map([&](const ComplexMatrix& x) { return gen.apply_double_commutator(x); }, n);
  const double form_gap = linalg::max_abs(via_commutators.matrix - data->superop.matrix);
  if (form_gap > 1e-12 * scale) {
    std::ostringstream os;
    os << "build_generator: sum form and double-commutator form differ by " << form_gap;
    throw NumericalError(os.str());
  }
  const double herm_defect =
      linalg::max_abs(data->superop.matrix - data->superop.matrix.adjoint());
  if (herm_defect > 1e-10 * scale) {
    throw NumericalError("build_generator: superoperator is not self-adjoint");
  }

  data->spectrum =
      linalg::eigh(linalg::HermitianOperator::hermitian_part(data->superop.matrix));
  if (data->spectrum.values(0) < -1e-9 * scale) {
    std::ostringstream os;
    os << "build_generator: negative eigenvalue " << data->spectrum.values(0);
    throw NumericalError(os.str());
  }
  gen.data_ = std::move(data);
  return gen;
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const ComplexMatrix& a = jumps_[k].matrix();
    out += squares_[k] * x + x * squares_[k] - 2.0 * a * x * a;
  }
  return out;
}

ComplexMatrix LindbladGenerator::apply_double_commutator(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& a : jumps_) {
    out += linalg::commutator(a.matrix(), linalg::commutator(a.matrix(), x));
  }
  return out;
}

ComplexMatrix LindbladGenerator::evolve_matrix(const ComplexMatrix& x, double t) const {
  if (t < 0.0) throw InvalidInput("evolve: negative time (semigroup is defined for t >= 0)");
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("evolve: dimension mismatch");
  if (t == 0.0) return x;
  const auto& sp = data_->spectrum;
  ComplexVector coeff = sp.vectors.adjoint() * linalg::vec(x);
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::exp(-t * sp.values(k));
  return linalg::unvec(sp.vectors * coeff, dim_);
}

DensityOperator LindbladGenerator::evolve(const DensityOperator& rho, double t) const {
  if (t == 0.0) return rho;
  ComplexMatrix out = evolve_matrix(rho.matrix(), t);
  out = 0.5 * (out + out.adjoint());
  return DensityOperator::from_matrix(out, 1e-9, true);
}

linalg::Superoperator LindbladGenerator::propagator(double t) const {
  if (t < 0.0) throw InvalidInput("propagator: negative time");
  const auto& sp = data_->spectrum;
  RealVector e(sp.values.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) e(k) = std::exp(-t * sp.values(k));
  return {dim_, sp.vectors * e.cast<cd>().asDiagonal() * sp.vectors.adjoint()};
}

std::vector<ComplexMatrix> LindbladGenerator::derivation(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("derivation: dimension mismatch");
  std::vector<ComplexMatrix> out;
  out.reserve(jumps_.size());
  const cd i(0.0, 1.0);
  for (const auto& a : jumps_) out.push_back(i * linalg::commutator(a.matrix(), x));
  return out;
}

double LindbladGenerator::zero_threshold() const {
  const double top = data_->spectrum.values.size() > 0 ? data_->spectrum.values.maxCoeff() : 0.0;
  return 1e-9 * std::max(1.0, top);
}

double LindbladGenerator::spectral_gap() const {
  const double thr = zero_threshold();
  for (Eigen::Index k = 0; k < data_->spectrum.values.size(); ++k) {
    if (data_->spectrum.values(k) > thr) return data_->spectrum.values(k);
  }
  throw DegenerateGeneratorError("spectral_gap: generator spectrum is identically zero");
}

int LindbladGenerator::kernel_dimension() const {
  const double thr = zero_threshold();
  int count = 0;
  for (Eigen::Index k = 0; k < data_->spectrum.values.size(); ++k) {
    if (data_->spectrum.values(k) <= thr) ++count;
  }
  return count;
}

LindbladGenerator LindbladGenerator::amplify(int m) const {
  if (m < 1) throw InvalidInput("amplify: ancilla dimension must be >= 1");
  if (m == 1) return *this;
  const ComplexMatrix im = ComplexMatrix::Identity(m, m);
  std::vector<HermitianOperator> lifted;
  lifted.reserve(jumps_.size());
  for (const auto& a : jumps_) {
    lifted.push_back(HermitianOperator::hermitian_part(kron(a.matrix(), im)));
  }
  return build(std::move(lifted), dim_ * m);
}

LindbladGenerator LindbladGenerator::scaled(double c) const {
  std::vector<HermitianOperator> js;
  js.reserve(jumps_.size());
  for (const auto& a : jumps_) js.push_back(HermitianOperator::hermitian_part(c * a.matrix()));
  return build(std::move(js), dim_);
}

LindbladGenerator generator_from_json(const io::json& j) {
  if (!j.contains("dim") || !j.contains("jumps")) {
    throw ConfigError("generator config needs \"dim\" and \"jumps\"");
  }
  const int n = j.at("dim").get<int>();
  std::vector<HermitianOperator> jumps;
  for (const auto& m : j.at("jumps")) jumps.emplace_back(io::matrix_from_json(m));
  return LindbladGenerator::build(std::move(jumps), n);
}

io::json generator_to_json(const LindbladGenerator& gen) {
  io::json j;
  j["dim"] = gen.dim();
  j["jumps"] = io::json::array();
  for (const auto& a : gen.jumps()) j["jumps"].push_back(io::matrix_to_json(a.matrix()));
  return j;
}

}  // namespace clsi::lindblad
