#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "wrep/complex_core.hpp"
#include "wrep/errors.hpp"

namespace wrep {

enum class NodeKind : unsigned char {
  literal,   // complex constant
  variable,  // the single variable z
  negate,    // unary minus
  add,
  sub,
  mul,
  div,
  pow,   // base expression, integer exponent
  apply, // one of the Func functions
};

enum class Func : unsigned char { exp, log, sin, cos, sinh, cosh, sqrt };

const char* func_name(Func f);

/// Immutable AST for a complex-analytic function of one variable z.
/// Copies share nodes; all operations build fresh trees.
class Expr {
 public:
  struct Node;  // defined in expr.cpp

  Expr() : Expr(literal(0.0)) {}

  static Expr literal(Complex value);
  static Expr variable();
  static Expr apply(Func f, Expr arg);
  static Expr pow(Expr base, int exponent);

  friend Expr operator-(Expr e);
  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);

  NodeKind kind() const;
  /// Literal value; only meaningful when kind() == literal.
  Complex value() const;
  /// Integer exponent; only meaningful when kind() == pow.
  int exponent() const;
  /// Function tag; only meaningful when kind() == apply.
  Func func() const;
  /// Child accessors: lhs() is also the operand of negate/apply/pow.
  Expr lhs() const;
  Expr rhs() const;

  /// Value of the expression at z, using principal branches for log and
  /// sqrt. Throws EvalError at singular points and on non-finite results.
  Complex eval(Complex z) const;

  /// Deep structural equality (same shape, same literals bitwise-as-values).
  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr differentiate(const Expr& e);
  friend Expr constant_fold(const Expr& e);
  friend std::string to_string(const Expr& e);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parse expression text. Grammar (see docs/grammar.ebnf): usual precedence,
/// `i` is the imaginary unit, `z` the variable, function arguments must be
/// parenthesized, no implicit multiplication, `^` takes an integer literal
/// exponent. Throws ParseError / UnknownIdentifierError.
Expr parse(std::string_view src);

/// d/dz by the standard rules; the result is again an analytic expression.
Expr differentiate(const Expr& e);

/// Collapse literal subtrees and drop arithmetic identities (x+0, x*1, ...).
/// Semantics-preserving: never cancels across a possible singularity.
Expr constant_fold(const Expr& e);

/// Render to text that parses back to an equivalent expression. For trees
/// produced by parse() the round trip is structurally exact.
std::string to_string(const Expr& e);

}  // namespace wrep
