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

#include "clsi/density_expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

#include "clsi/errors.hpp"

namespace clsi::interval {

struct DensityExpr::Node {
  enum class Kind { Const, X, Add, Sub, Mul, Div, Neg, Pow, Func } kind = Kind::Const;
  double value = 0.0;
  std::string func;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = DensityExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr constant(double v) {
  auto n = std::make_shared<Node>();
  n->value = v;
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, const std::map<std::string, double>& params) : s_(s), params_(params) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("density expression \"" + s_ + "\" at " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr e = term();
    while (true) {
      if (accept('+')) {
        e = make(Node::Kind::Add, e, term());
      } else if (accept('-')) {
        e = make(Node::Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    while (true) {
      if (accept('*')) {
        e = make(Node::Kind::Mul, e, unary());
      } else if (accept('/')) {
        e = make(Node::Kind::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x") return make(Node::Kind::X);
      if (name == "exp" || name == "log" || name == "sqrt" || name == "sin" || name == "cos") {
        if (!accept('(')) fail("expected '(' after " + name);
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Func;
        n->func = name;
        n->a = expr();
        if (!accept(')')) fail("expected ')'");
        return n;
      }
      if (name == "pi") return constant(M_PI);
      const auto it = params_.find(name);
      if (it == params_.end()) fail("unbound name '" + name + "'");
      return constant(it->second);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::map<std::string, double>& params_;
  std::size_t pos_ = 0;
};

// Composition rule for a scalar function with derivatives f0, f1, f2 at u.v.
Jet chain(const Jet& u, double f0, double f1, double f2) {
  return {f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2};
}

Jet eval(const Node& n, double x) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::Const:
      return {n.value, 0.0, 0.0};
    case K::X:
      return {x, 1.0, 0.0};
    case K::Neg: {
      const Jet a = eval(*n.a, x);
      return {-a.v, -a.d1, -a.d2};
    }
    case K::Add:
    case K::Sub: {
      const Jet a = eval(*n.a, x), b = eval(*n.b, x);
      const double s = n.kind == K::Add ? 1.0 : -1.0;
      return {a.v + s * b.v, a.d1 + s * b.d1, a.d2 + s * b.d2};
    }
    case K::Mul: {
      const Jet a = eval(*n.a, x), b = eval(*n.b, x);
      return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
    }
    case K::Div: {
      const Jet a = eval(*n.a, x), b = eval(*n.b, x);
      const Jet r = chain(b, 1.0 / b.v, -1.0 / (b.v * b.v), 2.0 / (b.v * b.v * b.v));
      return {a.v * r.v, a.d1 * r.v + a.v * r.d1, a.d2 * r.v + 2.0 * a.d1 * r.d1 + a.v * r.d2};
    }
    case K::Pow: {
      const Jet a = eval(*n.a, x), b = eval(*n.b, x);
      if (b.d1 == 0.0 && b.d2 == 0.0) {
        const double p = b.v;
        if (p == 0.0) return {1.0, 0.0, 0.0};
        const double f1 = p == 1.0 ? 1.0 : p * std::pow(a.v, p - 1.0);
        const double f2 = (p == 1.0 || p == 2.0) ? (p == 2.0 ? 2.0 : 0.0) : p * (p - 1.0) * std::pow(a.v, p - 2.0);
        return chain(a, std::pow(a.v, p), f1, f2);
      }
      // a^b = exp(b log a)
      const Jet la = chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
      const Jet e{b.v * la.v, b.d1 * la.v + b.v * la.d1, b.d2 * la.v + 2.0 * b.d1 * la.d1 + b.v * la.d2};
      const double ev = std::exp(e.v);
      return chain(e, ev, ev, ev);
    }
    case K::Func: {
      const Jet a = eval(*n.a, x);
      if (n.func == "exp") {
        const double e = std::exp(a.v);
        return chain(a, e, e, e);
      }
      if (n.func == "log") return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
      if (n.func == "sqrt") {
        const double r = std::sqrt(a.v);
        return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
      }
      if (n.func == "sin") return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
      return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
    }
  }
  return {};
}

}  // namespace

DensityExpr DensityExpr::parse(const std::string& text, const std::map<std::string, double>& params) {
  DensityExpr e;
  e.text_ = text;
  e.root_ = Parser(text, params).parse();
  return e;
}

Jet DensityExpr::jet(double x) const { return eval(*root_, x); }

}  // namespace clsi::interval
