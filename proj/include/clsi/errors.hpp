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

#include <stdexcept>
#include <string>

namespace clsi {

// Caller passed operands of incompatible shape.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a documented precondition (non-Hermitian, negative time, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scalar function undefined at some eigenvalue.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iteration budget exhausted or an internal consistency assertion failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankDeficiencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Generator with identically zero spectrum has no spectral gap.
class DegenerateGeneratorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Kernel of L not separated from the rest of the spectrum.
class AmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// mlsi ratio requested at (or numerically at) a fixed point.
class NearFixedPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnreachedTargetError : public NumericalError {
 public:
  UnreachedTargetError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class PoolExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Wraps a failure inside the end-to-end pipeline with the stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace clsi
