#include "ctc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <limits>
#include <type_traits>

namespace ctc {

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : InputError("parse error at offset " + std::to_string(offset) + ": expected " + expected + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

static std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

BindError::BindError(const std::string& variable, const std::vector<std::string>& coords)
    : InputError("unknown variable '" + variable + "' (chart coordinates: " + join(coords) + ")"), variable_(variable) {}

EvalError::EvalError(const std::string& reason, std::string subexpression)
    : std::runtime_error(reason + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::sqrt: return "sqrt";
    case Func::log: return "log";
    case Func::tanh: return "tanh";
  }
  return "?";
}

static bool lookup_func(const std::string& s, Func& f) {
  static const std::pair<const char*, Func> table[] = {{"sin", Func::sin},   {"cos", Func::cos}, {"exp", Func::exp},
                                                       {"sqrt", Func::sqrt}, {"log", Func::log}, {"tanh", Func::tanh}};
  for (const auto& [name, fn] : table)
    if (s == name) {
      f = fn;
      return true;
    }
  return false;
}

namespace {

NodePtr make_node(ExprNode::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, "operator or end of input", describe());
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string describe() {
    skip();
    if (pos_ >= s_.size()) return "end of input";
    return "'" + std::string(1, s_[pos_]) + "'";
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make_node(ExprNode::Kind::add, lhs, term());
      else if (eat('-')) lhs = make_node(ExprNode::Kind::sub, lhs, term());
      else return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make_node(ExprNode::Kind::mul, lhs, unary());
      else if (eat('/')) lhs = make_node(ExprNode::Kind::div, lhs, unary());
      else return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make_node(ExprNode::Kind::neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make_node(ExprNode::Kind::pow, base, unary());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "operand", "end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!eat(')')) throw ParseError(pos_, "')'", describe());
      return e;
    }
    throw ParseError(pos_, "operand", describe());
  }
  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ - start == 1 && s_[start] == '.') throw ParseError(start, "number", "'.'");
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
        pos_ = q;
      } else {
        throw ParseError(q, "exponent digits", q < s_.size() ? "'" + std::string(1, s_[q]) + "'" : "end of input");
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v))
      throw ParseError(start, "finite number", "'" + s_.substr(start, pos_ - start) + "'");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::number;
    n->number = v;
    return n;
  }
  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    Func f;
    if (lookup_func(name, f)) {
      if (!eat('(')) throw ParseError(pos_, "'(' after " + name, describe());
      NodePtr arg = expression();
      if (!eat(')')) throw ParseError(pos_, "')'", describe());
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::call;
      n->func = f;
      n->lhs = arg;
      return n;
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') throw ParseError(start, "known function", "'" + name + "'");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::variable;
    n->name = std::move(name);
    return n;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// Binding strength used for printing: + - (1), * / (2), unary (3), ^ (4), atoms (5).
int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::add:
    case ExprNode::Kind::sub: return 1;
    case ExprNode::Kind::mul:
    case ExprNode::Kind::div: return 2;
    case ExprNode::Kind::neg: return 3;
    case ExprNode::Kind::pow: return 4;
    case ExprNode::Kind::number: return n.number < 0 ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print_into(const ExprNode& n, std::string& out);

void print_child(const ExprNode& c, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(c, out);
  if (parens) out += ')';
}

void print_into(const ExprNode& n, std::string& out) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::number: out += format_number(n.number); return;
    case K::variable: out += n.name; return;
    case K::neg:
      out += '-';
      print_child(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case K::call:
      out += func_name(n.func);
      print_child(*n.lhs, true, out);
      return;
    case K::pow:
      print_child(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      print_child(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      const int p = precedence(n);
      const char op = n.kind == K::add ? '+' : n.kind == K::sub ? '-' : n.kind == K::mul ? '*' : '/';
      print_child(*n.lhs, precedence(*n.lhs) < p, out);
      out += p == 1 ? std::string(" ") + op + " " : std::string(1, op);
      print_child(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

void collect(const ExprNode& n, std::set<std::string>& out) {
  if (n.kind == ExprNode::Kind::variable) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::number: return a.number == b.number;
    case ExprNode::Kind::variable: return a.name == b.name;
    case ExprNode::Kind::call:
      if (a.func != b.func) return false;
      break;
    default: break;
  }
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !equal_nodes(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !equal_nodes(*a.rhs, *b.rhs)) return false;
  return true;
}

}  // namespace

FieldExpr::FieldExpr() : root_(number(0.0).node()) {}

bool FieldExpr::is_constant() const { return free_variables(*this).empty(); }

double FieldExpr::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value: expression has free variables");
  return BoundExpr(*this, {}).evaluate({});
}

FieldExpr parse_field(const std::string& src) { return FieldExpr(Parser(src).parse()); }

std::string print(const FieldExpr& e) {
  std::string out;
  print_into(e.root(), out);
  return out;
}

std::set<std::string> free_variables(const FieldExpr& e) {
  std::set<std::string> out;
  collect(e.root(), out);
  return out;
}

bool structurally_equal(const FieldExpr& a, const FieldExpr& b) { return equal_nodes(a.root(), b.root()); }

// ---------------------------------------------------------------------------
// Compilation and evaluation

BoundExpr::BoundExpr(const FieldExpr& e, const std::vector<std::string>& coords) : expr_(e), dim_(int(coords.size())) {
  for (const auto& v : free_variables(e))
    if (std::find(coords.begin(), coords.end(), v) == coords.end()) throw BindError(v, coords);
  std::map<std::string, int> slots;
  for (int i = 0; i < dim_; ++i) slots[coords[i]] = i;
  compile(e.node());
  for (auto& in : tape_)
    if (in.op == Instr::Op::variable) in.index = slots.at(in.node->name);
  std::size_t depth = 0;
  for (const auto& in : tape_) {
    switch (in.op) {
      case Instr::Op::constant:
      case Instr::Op::variable: ++depth; break;
      case Instr::Op::add:
      case Instr::Op::sub:
      case Instr::Op::mul:
      case Instr::Op::div:
      case Instr::Op::pow: --depth; break;
      default: break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
}

void BoundExpr::compile(const NodePtr& np) {
  using K = ExprNode::Kind;
  using Op = Instr::Op;
  const ExprNode& n = *np;
  Instr in;
  in.node = np;
  switch (n.kind) {
    case K::number:
      in.op = Op::constant;
      in.number = n.number;
      break;
    case K::variable: in.op = Op::variable; break;
    case K::neg:
      compile(n.lhs);
      in.op = Op::neg;
      break;
    case K::call:
      compile(n.lhs);
      in.op = Op::call;
      in.func = n.func;
      break;
    case K::pow: {
      compile(n.lhs);
      const FieldExpr exponent(n.rhs);
      if (exponent.is_constant()) {
        const double p = exponent.constant_value();
        if (p == std::round(p) && std::abs(p) < 1e9) {
          in.op = Op::ipow;
          in.index = int(p);
        } else {
          in.op = Op::rpow;
          in.number = p;
        }
      } else {
        compile(n.rhs);
        in.op = Op::pow;
      }
      break;
    }
    default:
      compile(n.lhs);
      compile(n.rhs);
      in.op = n.kind == K::add ? Op::add : n.kind == K::sub ? Op::sub : n.kind == K::mul ? Op::mul : Op::div;
      break;
  }
  tape_.push_back(in);
}

void BoundExpr::fail(const std::string& reason, const Instr& in) const { throw EvalError(reason, print(FieldExpr(in.node))); }

namespace {

template <class T>
T make_constant(double v, std::span<const T> vars) {
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, long double>) {
    (void)vars;
    return T(v);
  } else {
    return T(vars.empty() ? 0 : vars[0].dim(), v);
  }
}

template <class T>
T apply_func(Func f, const T& x) {
  using std::cos, std::exp, std::log, std::sin, std::sqrt, std::tanh;
  switch (f) {
    case Func::sin: return sin(x);
    case Func::cos: return cos(x);
    case Func::exp: return exp(x);
    case Func::sqrt: return sqrt(x);
    case Func::log: return log(x);
    case Func::tanh: return tanh(x);
  }
  return x;
}

template <class T>
T integer_power(const T& x, int k) {
  if constexpr (std::is_same_v<T, long double>) {
    long double r = 1.0L, b = x;
    unsigned m = k < 0 ? -static_cast<unsigned>(k) : static_cast<unsigned>(k);
    while (m) {
      if (m & 1u) r *= b;
      b *= b;
      m >>= 1u;
    }
    return k < 0 ? 1.0L / r : r;
  } else {
    return pow(x, k);
  }
}

template <class T>
T real_power(const T& x, double p) {
  if constexpr (std::is_same_v<T, long double>) return std::pow(x, static_cast<long double>(p));
  else if constexpr (std::is_same_v<T, double>) return std::pow(x, p);
  else return pow(x, p);
}

template <class T>
T general_power(const T& x, const T& y) {
  if constexpr (std::is_same_v<T, long double> || std::is_same_v<T, double>) return std::pow(x, y);
  else return pow(x, y);
}

}  // namespace

template <class T>
T BoundExpr::run(std::span<const T> vars) const {
  using Op = Instr::Op;
  if (int(vars.size()) != dim_) throw std::invalid_argument("BoundExpr: wrong number of coordinates");
  std::vector<T> st;
  st.reserve(max_stack_ + 1);
  for (const Instr& in : tape_) {
    switch (in.op) {
      case Op::constant: st.push_back(make_constant<T>(in.number, vars)); break;
      case Op::variable: st.push_back(vars[in.index]); break;
      case Op::neg: st.back() = -st.back(); break;
      case Op::add: {
        T r = st.back();
        st.pop_back();
        st.back() = st.back() + r;
        break;
      }
      case Op::sub: {
        T r = st.back();
        st.pop_back();
        st.back() = st.back() - r;
        break;
      }
      case Op::mul: {
        T r = st.back();
        st.pop_back();
        st.back() = st.back() * r;
        break;
      }
      case Op::div: {
        T r = st.back();
        st.pop_back();
        if (value_of(r) == 0) fail("division by zero", in);
        st.back() = st.back() / r;
        break;
      }
      case Op::ipow:
        if (in.index < 0 && value_of(st.back()) == 0) fail("negative power of zero", in);
        st.back() = integer_power(st.back(), in.index);
        break;
      case Op::rpow:
        if (!(value_of(st.back()) > 0)) fail("non-integer power of a non-positive base", in);
        st.back() = real_power(st.back(), in.number);
        break;
      case Op::pow: {
        T r = st.back();
        st.pop_back();
        if (!(value_of(st.back()) > 0)) fail("non-constant power of a non-positive base", in);
        st.back() = general_power(st.back(), r);
        break;
      }
      case Op::call: {
        const auto v = value_of(st.back());
        if (in.func == Func::sqrt && v < 0) fail("sqrt of a negative number", in);
        if (in.func == Func::sqrt && v == 0 && !(std::is_same_v<T, double> || std::is_same_v<T, long double>))
          fail("sqrt is not differentiable at 0", in);
        if (in.func == Func::log && !(v > 0)) fail("log of a non-positive number", in);
        st.back() = apply_func(in.func, st.back());
        break;
      }
    }
  }
  return st.back();
}

template double BoundExpr::run<double>(std::span<const double>) const;
template long double BoundExpr::run<long double>(std::span<const long double>) const;
template Jet1 BoundExpr::run<Jet1>(std::span<const Jet1>) const;
template Jet2 BoundExpr::run<Jet2>(std::span<const Jet2>) const;

double BoundExpr::evaluate(std::span<const double> x) const { return run<double>(x); }

long double BoundExpr::evaluate_ld(std::span<const long double> x) const { return run<long double>(x); }

Jet1 BoundExpr::evaluate_jet1(std::span<const double> x) const {
  std::vector<Jet1> v;
  v.reserve(x.size());
  for (int a = 0; a < int(x.size()); ++a) v.push_back(Jet1::variable(int(x.size()), a, x[a]));
  return run<Jet1>(v);
}

Jet2 BoundExpr::evaluate_jet2(std::span<const double> x) const {
  std::vector<Jet2> v;
  v.reserve(x.size());
  for (int a = 0; a < int(x.size()); ++a) v.push_back(Jet2::variable(int(x.size()), a, x[a]));
  return run<Jet2>(v);
}

Jet2 evaluate_2jet(const FieldExpr& e, const std::vector<std::string>& coords, std::span<const double> point) {
  return BoundExpr(e, coords).evaluate_jet2(point);
}

double finite_difference_check(const BoundExpr& e, std::span<const double> point, double h) {
  if (!(h > 0)) throw std::invalid_argument("finite_difference_check: h must be positive");
  const int d = e.dim();
  const Jet2 jet = e.evaluate_jet2(point);
  std::vector<long double> x(point.begin(), point.end());
  const long double hh = h;
  auto f = [&](int a, int sa, int b, int sb) {
    std::vector<long double> y = x;
    if (a >= 0) y[a] += sa * hh;
    if (b >= 0) y[b] += sb * hh;
    return e.evaluate_ld(y);
  };
  auto rel = [](long double exact, long double fd) {
    return double(std::abs(exact - fd) / std::max(1.0L, std::abs(fd)));
  };
  const long double f0 = f(-1, 0, -1, 0);
  double worst = rel(jet.value(), f0);
  for (int a = 0; a < d; ++a) {
    const long double fp = f(a, 1, -1, 0), fm = f(a, -1, -1, 0);
    worst = std::max(worst, rel(jet.grad(a), (fp - fm) / (2 * hh)));
    worst = std::max(worst, rel(jet.hess(a, a), (fp - 2 * f0 + fm) / (hh * hh)));
    for (int b = a + 1; b < d; ++b) {
      const long double fd = (f(a, 1, b, 1) - f(a, 1, b, -1) - f(a, -1, b, 1) + f(a, -1, b, -1)) / (4 * hh * hh);
      worst = std::max(worst, rel(jet.hess(a, b), fd));
    }
  }
  return worst;
}

double finite_difference_check(const FieldExpr& e, const std::vector<std::string>& coords,
                               std::span<const double> point, double h) {
  return finite_difference_check(BoundExpr(e, coords), point, h);
}

}  // namespace ctc
