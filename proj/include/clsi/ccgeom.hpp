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

// Upper bounds on Carnot-Caratheodory distances by optimizing piecewise
// constant horizontal controls. Every reported length belongs to an explicit
// feasible path, so distances and diameters can only be over-estimated.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clsi/json_io.hpp"
#include "clsi/liegroup.hpp"

namespace clsi::ccgeom {

// Segment i moves along exp(sum_k v_ik X_k) in the orthonormal frame of the
// horizontal system; its length is |v_i|. Duration and unit control are
// recovered as tau_i = |v_i|, lambda_i = v_i / |v_i|.
struct HorizontalPath {
  std::vector<RealVector> segments;

  double length() const;
  int size() const { return static_cast<int>(segments.size()); }
};

// Product exp(V_1) ... exp(V_K) in the defining representation.
ComplexMatrix path_endpoint(const liegroup::HorizontalSystem& h, const HorizontalPath& path);

struct CcOptions {
  int segments = 12;
  int opt_budget = 200;  // L-BFGS iterations per penalty stage
  int restarts = 6;
  std::uint64_t seed = 3;
  double tolerance = 1e-8;  // on ||endpoint - target||_F^2
};

struct DistanceResult {
  double length = 0.0;
  double residual = 0.0;
  HorizontalPath path;
};

// Shortest feasible path found. A warm path (possibly from a smaller direction
// set or fewer segments, already expressed in this system's frame) is kept as
// a candidate, so the result never exceeds the warm length.
// InvalidInput when the system is not Hormander; UnreachedTargetError when no
// restart reaches the tolerance.
DistanceResult cc_distance_upper(const liegroup::HorizontalSystem& h, const ComplexMatrix& target,
                                 const CcOptions& options, const HorizontalPath* warm = nullptr);

// Re-expresses a path of `from` in the frame of `to`; the span of `from` must
// lie in the span of `to` (lengths are preserved).
HorizontalPath embed_path(const liegroup::HorizontalSystem& from, const liegroup::HorizontalSystem& to,
                          const HorizontalPath& path);

// Splits segments in halves until at least k segments, then pads with zero
// segments. Endpoint and length are unchanged.
HorizontalPath fit_segments(const HorizontalPath& path, int k);

struct TargetRecord {
  std::string label;
  RealVector coords;  // algebra coordinates with target = exp(coords)
  ComplexMatrix target;
  double length = 0.0;
  double residual = 0.0;
  HorizontalPath path;
};

struct DiameterResult {
  double d_X = 0.0;
  std::vector<TargetRecord> targets;

  io::json to_json() const;
};

// max over structured candidates (SU(2): -I and exp(theta e_k) for
// theta in {pi/2, pi, 3pi/2}; T^d: the vertices of {0, pi}^d) and n_targets
// Haar samples of cc_distance_upper(e, g).
DiameterResult cc_diameter(const liegroup::HorizontalSystem& h, int n_targets, const CcOptions& options);

// Recomputes the diameter on the target set of `previous` with warm starts
// from its paths (embedded from `previous_system`). Used for direction-set
// enlargement and segment doubling; the result never exceeds previous.d_X.
DiameterResult cc_diameter_warm(const liegroup::HorizontalSystem& h, const DiameterResult& previous,
                                const liegroup::HorizontalSystem& previous_system,
                                const CcOptions& options);

}  // namespace clsi::ccgeom
