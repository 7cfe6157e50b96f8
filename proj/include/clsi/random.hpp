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

#pragma once

#include <cstdint>
#include <random>

#include "clsi/linalg.hpp"

namespace clsi::random {

using Rng = std::mt19937_64;

// Deterministic child seed for sample `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

ComplexMatrix ginibre(int rows, int cols, Rng& rng);

// GUE-like Hermitian matrix normalized to unit Frobenius norm.
linalg::HermitianOperator hermitian(int n, Rng& rng);

// Haar unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_unitary(int n, Rng& rng);

// Hilbert-Schmidt random state of the given rank (rank = n: full rank).
DensityOperator hs_state(int n, Rng& rng, int rank = -1);

DensityOperator pure_state(int n, Rng& rng);

}  // namespace clsi::random
