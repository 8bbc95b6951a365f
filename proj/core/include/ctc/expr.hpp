#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctc/jet.hpp"

namespace ctc {

// Errors caused by user-supplied input (expressions, manifests, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found);
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t offset_;
  std::string expected_, found_;
};

class BindError : public InputError {
 public:
  BindError(const std::string& variable, const std::vector<std::string>& coords);
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

// Domain violation during evaluation; names the offending subexpression.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& reason, std::string subexpression);
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

enum class Func { sin, cos, exp, sqrt, log, tanh };
const char* func_name(Func f);

struct ExprNode {
  enum class Kind { number, variable, neg, add, sub, mul, div, pow, call };
  Kind kind;
  double number = 0.0;
  std::string name;
  Func func = Func::sin;
  std::shared_ptr<const ExprNode> lhs, rhs;  // neg and call use lhs only
};

using NodePtr = std::shared_ptr<const ExprNode>;

class FieldExpr {
 public:
  FieldExpr();  // the literal 0
  explicit FieldExpr(NodePtr root) : root_(std::move(root)) {}

  const ExprNode& root() const { return *root_; }
  const NodePtr& node() const { return root_; }

  bool is_constant() const;
  // Value of a variable-free expression.
  double constant_value() const;

 private:
  NodePtr root_;
};

FieldExpr parse_field(const std::string& src);
std::string print(const FieldExpr& e);
std::set<std::string> free_variables(const FieldExpr& e);
bool structurally_equal(const FieldExpr& a, const FieldExpr& b);

// Builders with light constant folding.
FieldExpr number(double v);
FieldExpr variable(const std::string& name);
FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a);
FieldExpr power(const FieldExpr& a, const FieldExpr& b);
FieldExpr call(Func f, const FieldExpr& a);

FieldExpr differentiate(const FieldExpr& e, const std::string& var);
FieldExpr substitute(const FieldExpr& e, const std::map<std::string, FieldExpr>& values);

// An expression compiled against an ordered coordinate list.
class BoundExpr {
 public:
  BoundExpr() = default;
  BoundExpr(const FieldExpr& e, const std::vector<std::string>& coords);

  int dim() const { return dim_; }
  const FieldExpr& expr() const { return expr_; }

  double evaluate(std::span<const double> x) const;
  long double evaluate_ld(std::span<const long double> x) const;
  Jet1 evaluate_jet1(std::span<const double> x) const;
  Jet2 evaluate_jet2(std::span<const double> x) const;

  // Generic evaluation with caller-supplied variable values.
  template <class T>
  T run(std::span<const T> vars) const;

 private:
  struct Instr {
    enum class Op { constant, variable, neg, add, sub, mul, div, ipow, rpow, pow, call } op;
    double number = 0.0;
    int index = 0;  // variable slot or integer exponent
    Func func = Func::sin;
    NodePtr node;
  };
  void compile(const NodePtr& n);
  [[noreturn]] void fail(const std::string& reason, const Instr& in) const;

  FieldExpr expr_;
  int dim_ = 0;
  std::vector<Instr> tape_;
  std::size_t max_stack_ = 0;
};

Jet2 evaluate_2jet(const FieldExpr& e, const std::vector<std::string>& coords, std::span<const double> point);

// Max relative discrepancy between jet derivatives and long double central
// differences of the plain value evaluation.
double finite_difference_check(const BoundExpr& e, std::span<const double> point, double h);
double finite_difference_check(const FieldExpr& e, const std::vector<std::string>& coords,
                               std::span<const double> point, double h);

}  // namespace ctc
