#include <cmath>

#include "ctc/expr.hpp"

namespace ctc {

namespace {

using K = ExprNode::Kind;

NodePtr node(K k, NodePtr l, NodePtr r = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

// Literal value of a number node or a negated number node.
bool literal(const FieldExpr& e, double& v) {
  const ExprNode& n = e.root();
  if (n.kind == K::number) {
    v = n.number;
    return true;
  }
  if (n.kind == K::neg && n.lhs->kind == K::number) {
    v = -n.lhs->number;
    return true;
  }
  return false;
}

bool is_value(const FieldExpr& e, double want) {
  double v;
  return literal(e, v) && v == want;
}

}  // namespace

FieldExpr number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = K::number;
  n->number = std::abs(v);
  if (v < 0) return FieldExpr(node(K::neg, n));
  return FieldExpr(n);
}

FieldExpr variable(const std::string& name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = K::variable;
  n->name = name;
  return FieldExpr(n);
}

FieldExpr operator-(const FieldExpr& a) {
  double v;
  if (literal(a, v)) return number(-v);
  if (a.root().kind == K::neg) return FieldExpr(a.root().lhs);
  return FieldExpr(node(K::neg, a.node()));
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  double u, v;
  if (literal(a, u) && literal(b, v)) return number(u + v);
  if (is_value(a, 0)) return b;
  if (is_value(b, 0)) return a;
  if (b.root().kind == K::neg) return FieldExpr(node(K::sub, a.node(), b.root().lhs));
  return FieldExpr(node(K::add, a.node(), b.node()));
}

FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
  double u, v;
  if (literal(a, u) && literal(b, v)) return number(u - v);
  if (is_value(b, 0)) return a;
  if (is_value(a, 0)) return -b;
  if (b.root().kind == K::neg) return FieldExpr(node(K::add, a.node(), b.root().lhs));
  return FieldExpr(node(K::sub, a.node(), b.node()));
}

FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
  double u, v;
  if (literal(a, u) && literal(b, v)) return number(u * v);
  if (is_value(a, 0) || is_value(b, 0)) return number(0);
  if (is_value(a, 1)) return b;
  if (is_value(b, 1)) return a;
  if (is_value(a, -1)) return -b;
  if (is_value(b, -1)) return -a;
  return FieldExpr(node(K::mul, a.node(), b.node()));
}

FieldExpr operator/(const FieldExpr& a, const FieldExpr& b) {
  double u, v;
  if (literal(a, u) && literal(b, v) && v != 0) return number(u / v);
  if (is_value(b, 1)) return a;
  if (is_value(a, 0) && !is_value(b, 0)) return number(0);
  return FieldExpr(node(K::div, a.node(), b.node()));
}

FieldExpr power(const FieldExpr& a, const FieldExpr& b) {
  double u, v;
  if (is_value(b, 1)) return a;
  if (is_value(b, 0)) return number(1);
  if (literal(a, u) && literal(b, v)) {
    const double r = std::pow(u, v);
    if (std::isfinite(r) && (u > 0 || v == std::round(v))) return number(r);
  }
  return FieldExpr(node(K::pow, a.node(), b.node()));
}

FieldExpr call(Func f, const FieldExpr& a) {
  double u;
  if (literal(a, u)) {
    switch (f) {
      case Func::sin: return number(std::sin(u));
      case Func::cos: return number(std::cos(u));
      case Func::exp: return number(std::exp(u));
      case Func::tanh: return number(std::tanh(u));
      case Func::sqrt:
        if (u >= 0) return number(std::sqrt(u));
        break;
      case Func::log:
        if (u > 0) return number(std::log(u));
        break;
    }
  }
  auto n = std::make_shared<ExprNode>();
  n->kind = K::call;
  n->func = f;
  n->lhs = a.node();
  return FieldExpr(n);
}

FieldExpr differentiate(const FieldExpr& e, const std::string& var) {
  const ExprNode& n = e.root();
  const FieldExpr L(n.lhs), R(n.rhs);
  switch (n.kind) {
    case K::number: return number(0);
    case K::variable: return number(n.name == var ? 1 : 0);
    case K::neg: return -differentiate(L, var);
    case K::add: return differentiate(L, var) + differentiate(R, var);
    case K::sub: return differentiate(L, var) - differentiate(R, var);
    case K::mul: return differentiate(L, var) * R + L * differentiate(R, var);
    case K::div: return (differentiate(L, var) * R - L * differentiate(R, var)) / power(R, number(2));
    case K::pow: {
      const FieldExpr dl = differentiate(L, var);
      if (R.is_constant()) {
        const double p = R.constant_value();
        return number(p) * power(L, number(p - 1)) * dl;
      }
      const FieldExpr dr = differentiate(R, var);
      return e * (dr * call(Func::log, L) + R * dl / L);
    }
    case K::call: {
      const FieldExpr da = differentiate(L, var);
      if (is_value(da, 0)) return number(0);
      switch (n.func) {
        case Func::sin: return call(Func::cos, L) * da;
        case Func::cos: return -(call(Func::sin, L) * da);
        case Func::exp: return e * da;
        case Func::sqrt: return da / (number(2) * e);
        case Func::log: return da / L;
        case Func::tanh: return (number(1) - power(e, number(2))) * da;
      }
    }
  }
  return number(0);
}

FieldExpr substitute(const FieldExpr& e, const std::map<std::string, FieldExpr>& values) {
  const ExprNode& n = e.root();
  switch (n.kind) {
    case K::number: return e;
    case K::variable: {
      const auto it = values.find(n.name);
      return it == values.end() ? e : it->second;
    }
    case K::neg: return -substitute(FieldExpr(n.lhs), values);
    case K::call: return call(n.func, substitute(FieldExpr(n.lhs), values));
    default: break;
  }
  const FieldExpr L = substitute(FieldExpr(n.lhs), values), R = substitute(FieldExpr(n.rhs), values);
  switch (n.kind) {
    case K::add: return L + R;
    case K::sub: return L - R;
    case K::mul: return L * R;
    case K::div: return L / R;
    case K::pow: return power(L, R);
    default: return e;
  }
}

}  // namespace ctc
