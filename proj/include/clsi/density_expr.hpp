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

// Small expression language for densities on [0, 1], evaluated with first and
// second derivatives (second-order forward-mode jets).
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | name | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sqrt | sin | cos
// Names other than x are parameters bound at parse time ("n" -> 3).
// Examples: "x^(n-1)/n", "exp(-x^2/2)*x^2", "1 + 0.5*cos(2*pi*x)" (pi is
// predefined).

#pragma once

#include <map>
#include <memory>
#include <string>

namespace clsi::interval {

struct Jet {
  double v = 0.0;   // value
  double d1 = 0.0;  // first derivative in x
  double d2 = 0.0;  // second derivative in x
};

class DensityExpr {
 public:
  // ConfigError on syntax errors or unbound names.
  static DensityExpr parse(const std::string& text, const std::map<std::string, double>& params = {});

  Jet jet(double x) const;
  double operator()(double x) const { return jet(x).v; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace clsi::interval
