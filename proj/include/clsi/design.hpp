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

// Finite averaging designs: weights alpha_j and group elements g_j with
// sum_j alpha_j u(g_j)^dag x u(g_j) = E_N(x) for the Haar twirl E_N of a
// representation.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clsi/json_io.hpp"
#include "clsi/liegroup.hpp"
#include "clsi/linalg.hpp"

namespace clsi::design {

struct AveragingDesign {
  std::vector<RealVector> coords;  // algebra coordinates, u_j = rep.group(coords_j); may be empty
  std::vector<ComplexMatrix> unitaries;
  std::vector<double> weights;
  double residual = 0.0;
  std::string method;     // "identity", "torus-grid", "binary-polyhedral", "lp"
  bool reduced = true;    // false when support reduction broke down
  int pool_size = 0;      // Haar pool used by the LP, 0 for closed-form designs

  int size() const { return static_cast<int>(weights.size()); }
  io::json to_json() const;
};

// n^2 + 4n + 2
int caratheodory_cap(int n);

// Projection onto the commutant of the representation (the Haar twirl).
linalg::Superoperator twirl_superoperator(const liegroup::Representation& rep);

// x -> sum_j alpha_j u_j^dag x u_j as a superoperator.
linalg::Superoperator design_channel(const std::vector<ComplexMatrix>& unitaries,
                                     const std::vector<double>& weights);

// max over matrix units E_i of ||design(E_i) - E_N(E_i)||_F.
double verify_design(const AveragingDesign& d, const linalg::Superoperator& target);

struct DesignOptions {
  int pool_size = 400;
  int max_pool = 12800;  // pool doubles until this size
  std::uint64_t seed = 11;
  bool shortcuts = true;  // try closed-form designs before the LP
};

// target must be the twirl of rep (checked against twirl_superoperator within
// 1e-8, InvalidInput otherwise). PoolExhaustedError when the LP stays
// infeasible at max_pool; NumericalError if the final residual exceeds 1e-8.
AveragingDesign find_design(const liegroup::Representation& rep, const linalg::Superoperator& target,
                            const DesignOptions& options = {});
AveragingDesign find_design(const liegroup::Representation& rep, const DesignOptions& options = {});

// Caratheodory reduction: removes elements whose channel coordinates are
// affinely dependent until the support is affinely independent. The residual is
// re-verified against the design's own channel; on breakdown the input is
// returned with reduced = false.
AveragingDesign reduce_support(const AveragingDesign& d);

// Conjugates every unitary by v (v u_j v^dag); weights unchanged.
AveragingDesign conjugate(const AveragingDesign& d, const ComplexMatrix& v);

}  // namespace clsi::design
