#include "wrep/expr.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

namespace wrep {

struct Expr::Node {
  NodeKind kind;
  Complex value{};       // literal
  int exponent = 0;      // pow
  Func fn = Func::exp;   // apply
  std::shared_ptr<const Node> a{};
  std::shared_ptr<const Node> b{};
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Node n) {
  return std::make_shared<const Expr::Node>(std::move(n));
}

struct FuncEntry {
  const char* name;
  Func fn;
};

constexpr FuncEntry kFuncs[] = {
    {"exp", Func::exp},   {"log", Func::log},   {"sin", Func::sin},
    {"cos", Func::cos},   {"sinh", Func::sinh}, {"cosh", Func::cosh},
    {"sqrt", Func::sqrt},
};

bool lookup_func(std::string_view name, Func& out) {
  for (const auto& e : kFuncs) {
    if (name == e.name) {
      out = e.fn;
      return true;
    }
  }
  return false;
}

Complex pow_int(Complex base, int n) {
  if (n == 0) return Complex(1.0);
  unsigned long long m =
      n < 0 ? static_cast<unsigned long long>(-static_cast<long long>(n))
            : static_cast<unsigned long long>(n);
  Complex r(1.0);
  Complex p = base;
  while (m != 0) {
    if (m & 1ull) r *= p;
    p *= p;
    m >>= 1;
  }
  return n < 0 ? Complex(1.0) / r : r;
}

bool is_finite(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// ---------------------------------------------------------------------------
// Printing. Levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 primary.
// A child is parenthesized when its level is below what the position needs;
// printed text re-parses to the same tree for parser-shaped input.
// ---------------------------------------------------------------------------

void print_real(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

int literal_level(Complex v) {
  if (v.imag() == 0.0) return v.real() < 0.0 ? 3 : 5;
  if (v.real() == 0.0) {
    if (v.imag() == 1.0) return 5;
    if (v.imag() == -1.0) return 3;
    return 2;  // printed as "b*i"
  }
  return 5;  // printed fully parenthesized
}

void print_literal(std::string& out, Complex v) {
  if (v.imag() == 0.0) {
    print_real(out, v.real());
  } else if (v.real() == 0.0) {
    if (v.imag() == 1.0) {
      out += 'i';
    } else if (v.imag() == -1.0) {
      out += "-i";
    } else {
      print_real(out, v.imag());
      out += "*i";
    }
  } else {
    out += '(';
    print_real(out, v.real());
    out += v.imag() < 0.0 ? " - " : " + ";
    print_real(out, std::abs(v.imag()));
    out += "*i)";
  }
}

void print_node(std::string& out, const Expr::Node& n, int min_level);

void print_binary(std::string& out, const Expr::Node& n, const char* op,
                  int level) {
  print_node(out, *n.a, level);
  out += op;
  print_node(out, *n.b, level + 1);
}

void print_node(std::string& out, const Expr::Node& n, int min_level) {
  int level = 0;
  switch (n.kind) {
    case NodeKind::literal: level = literal_level(n.value); break;
    case NodeKind::variable: level = 5; break;
    case NodeKind::negate: level = 3; break;
    case NodeKind::add:
    case NodeKind::sub: level = 1; break;
    case NodeKind::mul:
    case NodeKind::div: level = 2; break;
    case NodeKind::pow: level = 4; break;
    case NodeKind::apply: level = 5; break;
  }
  const bool paren = level < min_level;
  if (paren) out += '(';
  switch (n.kind) {
    case NodeKind::literal: print_literal(out, n.value); break;
    case NodeKind::variable: out += 'z'; break;
    case NodeKind::negate:
      out += '-';
      print_node(out, *n.a, 3);
      break;
    case NodeKind::add: print_binary(out, n, " + ", 1); break;
    case NodeKind::sub: print_binary(out, n, " - ", 1); break;
    case NodeKind::mul: print_binary(out, n, "*", 2); break;
    case NodeKind::div: print_binary(out, n, "/", 2); break;
    case NodeKind::pow: {
      print_node(out, *n.a, 5);
      out += '^';
      char buf[16];
      auto res = std::to_chars(buf, buf + sizeof(buf), n.exponent);
      out.append(buf, res.ptr);
      break;
    }
    case NodeKind::apply:
      out += func_name(n.fn);
      out += '(';
      print_node(out, *n.a, 1);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

std::string node_to_string(const Expr::Node& n) {
  std::string out;
  print_node(out, n, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

[[noreturn]] void eval_fail(const char* what, Complex z, const Expr::Node& n) {
  std::ostringstream msg;
  msg << what << " in `" << node_to_string(n) << "` at z = (" << z.real()
      << ", " << z.imag() << ")";
  throw EvalError(msg.str(), z, node_to_string(n));
}

Complex eval_node(const Expr::Node& n, Complex z) {
  Complex r;
  switch (n.kind) {
    case NodeKind::literal: r = n.value; break;
    case NodeKind::variable: r = z; break;
    case NodeKind::negate: r = -eval_node(*n.a, z); break;
    case NodeKind::add: r = eval_node(*n.a, z) + eval_node(*n.b, z); break;
    case NodeKind::sub: r = eval_node(*n.a, z) - eval_node(*n.b, z); break;
    case NodeKind::mul: r = eval_node(*n.a, z) * eval_node(*n.b, z); break;
    case NodeKind::div: {
      const Complex den = eval_node(*n.b, z);
      if (den == Complex(0.0)) eval_fail("division by zero", z, n);
      r = eval_node(*n.a, z) / den;
      break;
    }
    case NodeKind::pow: {
      const Complex base = eval_node(*n.a, z);
      if (n.exponent < 0 && base == Complex(0.0))
        eval_fail("zero raised to a negative power", z, n);
      r = pow_int(base, n.exponent);
      break;
    }
    case NodeKind::apply: {
      const Complex arg = eval_node(*n.a, z);
      switch (n.fn) {
        case Func::exp: r = std::exp(arg); break;
        case Func::log:
          if (arg == Complex(0.0)) eval_fail("log of zero", z, n);
          r = std::log(arg);
          break;
        case Func::sin: r = std::sin(arg); break;
        case Func::cos: r = std::cos(arg); break;
        case Func::sinh: r = std::sinh(arg); break;
        case Func::cosh: r = std::cosh(arg); break;
        case Func::sqrt: r = std::sqrt(arg); break;
      }
      break;
    }
  }
  if (!is_finite(r)) eval_fail("non-finite result", z, n);
  return r;
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

struct Token {
  enum Type {
    number,
    ident,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    end,
  };
  Type type = end;
  std::size_t offset = 0;
  std::string_view text;
  double num = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) {
      t.type = Token::end;
      return t;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': t.type = Token::plus; break;
      case '-': t.type = Token::minus; break;
      case '*': t.type = Token::star; break;
      case '/': t.type = Token::slash; break;
      case '^': t.type = Token::caret; break;
      case '(': t.type = Token::lparen; break;
      case ')': t.type = Token::rparen; break;
      default:
        if (is_digit(c) || c == '.') return lex_number();
        if (is_alpha(c)) return lex_ident();
        throw ParseError("unexpected character `" + std::string(1, c) +
                             "` at offset " + std::to_string(pos_),
                         pos_, {"operator", "operand"});
    }
    t.text = src_.substr(pos_, 1);
    ++pos_;
    return t;
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  Token lex_number() {
    Token t;
    t.type = Token::number;
    t.offset = pos_;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc()) {
      throw ParseError("malformed number at offset " + std::to_string(pos_),
                       pos_, {"number"});
    }
    t.num = value;
    t.text = src_.substr(pos_, static_cast<std::size_t>(res.ptr - begin));
    pos_ += t.text.size();
    return t;
  }

  Token lex_ident() {
    Token t;
    t.type = Token::ident;
    t.offset = pos_;
    std::size_t n = 0;
    while (pos_ + n < src_.size() &&
           (is_alpha(src_[pos_ + n]) || is_digit(src_[pos_ + n])))
      ++n;
    t.text = src_.substr(pos_, n);
    pos_ += n;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Expr run() {
    Expr e = parse_expression();
    if (cur_.type != Token::end)
      fail("trailing input", {"operator", "end of input"});
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& what,
                         std::vector<std::string> expected) {
    std::ostringstream msg;
    msg << "syntax error at offset " << cur_.offset << ": " << what
        << " (expected";
    for (const auto& e : expected) msg << " " << e;
    msg << ")";
    throw ParseError(msg.str(), cur_.offset, std::move(expected));
  }

  Expr parse_expression() {
    Expr e = parse_term();
    while (cur_.type == Token::plus || cur_.type == Token::minus) {
      const bool add = cur_.type == Token::plus;
      advance();
      Expr r = parse_term();
      e = add ? std::move(e) + std::move(r) : std::move(e) - std::move(r);
    }
    return e;
  }

  Expr parse_term() {
    Expr e = parse_unary();
    while (cur_.type == Token::star || cur_.type == Token::slash) {
      const bool mul = cur_.type == Token::star;
      advance();
      Expr r = parse_unary();
      e = mul ? std::move(e) * std::move(r) : std::move(e) / std::move(r);
    }
    return e;
  }

  Expr parse_unary() {
    if (cur_.type == Token::minus) {
      advance();
      return -parse_unary();
    }
    if (cur_.type == Token::plus) {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (cur_.type != Token::caret) return base;
    advance();
    bool neg = false;
    if (cur_.type == Token::minus) {
      neg = true;
      advance();
    }
    if (cur_.type != Token::number || !is_integer_text(cur_.text))
      fail("exponent must be an integer literal", {"integer exponent"});
    int exponent = 0;
    auto res = std::from_chars(cur_.text.data(),
                               cur_.text.data() + cur_.text.size(), exponent);
    if (res.ec != std::errc() || res.ptr != cur_.text.data() + cur_.text.size())
      fail("exponent out of range", {"integer exponent"});
    advance();
    return Expr::pow(std::move(base), neg ? -exponent : exponent);
  }

  static bool is_integer_text(std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  }

  Expr parse_primary() {
    switch (cur_.type) {
      case Token::number: {
        Expr e = Expr::literal(cur_.num);
        advance();
        return e;
      }
      case Token::ident: {
        const std::string_view name = cur_.text;
        const std::size_t offset = cur_.offset;
        if (name == "z") {
          advance();
          return Expr::variable();
        }
        if (name == "i") {
          advance();
          return Expr::literal(Complex(0.0, 1.0));
        }
        Func fn;
        if (lookup_func(name, fn)) {
          advance();
          if (cur_.type != Token::lparen)
            fail("function `" + std::string(name) +
                     "` requires a parenthesized argument",
                 {"("});
          advance();
          Expr arg = parse_expression();
          if (cur_.type != Token::rparen) fail("unbalanced call", {")"});
          advance();
          return Expr::apply(fn, std::move(arg));
        }
        throw UnknownIdentifierError(
            "unknown identifier `" + std::string(name) + "` at offset " +
                std::to_string(offset),
            offset, std::string(name));
      }
      case Token::lparen: {
        advance();
        Expr e = parse_expression();
        if (cur_.type != Token::rparen)
          fail("unbalanced parenthesis", {")"});
        advance();
        return e;
      }
      default:
        fail("expected start of operand",
             {"number", "i", "z", "function", "("});
    }
  }

  Lexer lexer_;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Folding helpers
// ---------------------------------------------------------------------------

bool is_literal(const NodePtr& n, Complex v) {
  return n->kind == NodeKind::literal && n->value == v;
}

// True if evaluation of the subtree can fail somewhere: division, log, or a
// negative power. Identities like 0*e -> 0 are only applied when this is
// false, so folding never erases a singularity.
bool may_be_singular(const Expr::Node& n) {
  switch (n.kind) {
    case NodeKind::literal:
    case NodeKind::variable: return false;
    case NodeKind::div: return true;
    case NodeKind::pow:
      return n.exponent < 0 || may_be_singular(*n.a);
    case NodeKind::apply:
      return n.fn == Func::log || may_be_singular(*n.a);
    case NodeKind::negate: return may_be_singular(*n.a);
    default: return may_be_singular(*n.a) || may_be_singular(*n.b);
  }
}

bool all_literal_children(const Expr::Node& n) {
  switch (n.kind) {
    case NodeKind::literal:
    case NodeKind::variable: return false;
    case NodeKind::negate:
    case NodeKind::apply:
    case NodeKind::pow: return n.a->kind == NodeKind::literal;
    default:
      return n.a->kind == NodeKind::literal && n.b->kind == NodeKind::literal;
  }
}

NodePtr fold_node(const NodePtr& n);

NodePtr fold_children(const Expr::Node& n) {
  Expr::Node out = n;
  if (n.a) out.a = fold_node(n.a);
  if (n.b) out.b = fold_node(n.b);
  return make_node(std::move(out));
}

NodePtr fold_node(const NodePtr& n) {
  if (n->kind == NodeKind::literal || n->kind == NodeKind::variable) return n;
  NodePtr f = fold_children(*n);

  // Literal subtree: evaluate once. Left in place if evaluation is singular
  // (e.g. 1/0) so the error surfaces at eval time, not silently here.
  if (all_literal_children(*f)) {
    try {
      const Complex v = eval_node(*f, Complex(0.0));
      return make_node({.kind = NodeKind::literal, .value = v});
    } catch (const EvalError&) {
      return f;
    }
  }

  switch (f->kind) {
    case NodeKind::negate:
      if (f->a->kind == NodeKind::negate) return f->a->a;
      break;
    case NodeKind::add:
      if (is_literal(f->a, 0.0)) return f->b;
      if (is_literal(f->b, 0.0)) return f->a;
      break;
    case NodeKind::sub:
      if (is_literal(f->b, 0.0)) return f->a;
      if (is_literal(f->a, 0.0))
        return make_node({.kind = NodeKind::negate, .a = f->b});
      break;
    case NodeKind::mul:
      if (is_literal(f->a, 1.0)) return f->b;
      if (is_literal(f->b, 1.0)) return f->a;
      if (is_literal(f->a, 0.0) && !may_be_singular(*f->b)) return f->a;
      if (is_literal(f->b, 0.0) && !may_be_singular(*f->a)) return f->b;
      break;
    case NodeKind::div:
      if (is_literal(f->b, 1.0)) return f->a;
      break;
    case NodeKind::pow:
      if (f->exponent == 1) return f->a;
      if (f->exponent == 0 && !may_be_singular(*f->a))
        return make_node({.kind = NodeKind::literal, .value = Complex(1.0)});
      break;
    default: break;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

NodePtr diff_node(const NodePtr& n);

NodePtr lit_node(Complex v) {
  return make_node({.kind = NodeKind::literal, .value = v});
}

NodePtr bin_node(NodeKind k, NodePtr a, NodePtr b) {
  return make_node({.kind = k, .a = std::move(a), .b = std::move(b)});
}

NodePtr apply_node(Func fn, NodePtr a) {
  return make_node({.kind = NodeKind::apply, .fn = fn, .a = std::move(a)});
}

NodePtr pow_node(NodePtr base, int exponent) {
  return make_node(
      {.kind = NodeKind::pow, .exponent = exponent, .a = std::move(base)});
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::literal: return lit_node(0.0);
    case NodeKind::variable: return lit_node(1.0);
    case NodeKind::negate:
      return make_node({.kind = NodeKind::negate, .a = diff_node(n->a)});
    case NodeKind::add:
      return bin_node(NodeKind::add, diff_node(n->a), diff_node(n->b));
    case NodeKind::sub:
      return bin_node(NodeKind::sub, diff_node(n->a), diff_node(n->b));
    case NodeKind::mul:
      // (ab)' = a'b + ab'
      return bin_node(NodeKind::add,
                      bin_node(NodeKind::mul, diff_node(n->a), n->b),
                      bin_node(NodeKind::mul, n->a, diff_node(n->b)));
    case NodeKind::div:
      // (a/b)' = (a'b - ab') / b^2
      return bin_node(
          NodeKind::div,
          bin_node(NodeKind::sub, bin_node(NodeKind::mul, diff_node(n->a), n->b),
                   bin_node(NodeKind::mul, n->a, diff_node(n->b))),
          pow_node(n->b, 2));
    case NodeKind::pow: {
      // (e^k)' = k e^(k-1) e'
      if (n->exponent == 0) return lit_node(0.0);
      if (n->exponent == 1) return diff_node(n->a);
      NodePtr factor = bin_node(
          NodeKind::mul, lit_node(static_cast<double>(n->exponent)),
          pow_node(n->a, n->exponent - 1));
      return bin_node(NodeKind::mul, std::move(factor), diff_node(n->a));
    }
    case NodeKind::apply: {
      NodePtr da = diff_node(n->a);
      switch (n->fn) {
        case Func::exp:
          return bin_node(NodeKind::mul, n, std::move(da));
        case Func::log:
          return bin_node(NodeKind::div, std::move(da), n->a);
        case Func::sin:
          return bin_node(NodeKind::mul, apply_node(Func::cos, n->a),
                          std::move(da));
        case Func::cos:
          return make_node(
              {.kind = NodeKind::negate,
               .a = bin_node(NodeKind::mul, apply_node(Func::sin, n->a),
                             std::move(da))});
        case Func::sinh:
          return bin_node(NodeKind::mul, apply_node(Func::cosh, n->a),
                          std::move(da));
        case Func::cosh:
          return bin_node(NodeKind::mul, apply_node(Func::sinh, n->a),
                          std::move(da));
        case Func::sqrt:
          // (sqrt e)' = e' / (2 sqrt e)
          return bin_node(
              NodeKind::div, std::move(da),
              bin_node(NodeKind::mul, lit_node(2.0), apply_node(Func::sqrt, n->a)));
      }
      std::abort();  // unreachable
    }
  }
  std::abort();  // unreachable
}

bool nodes_equal(const Expr::Node& a, const Expr::Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::literal: return a.value == b.value;
    case NodeKind::variable: return true;
    case NodeKind::pow:
      return a.exponent == b.exponent && nodes_equal(*a.a, *b.a);
    case NodeKind::apply: return a.fn == b.fn && nodes_equal(*a.a, *b.a);
    case NodeKind::negate: return nodes_equal(*a.a, *b.a);
    default: return nodes_equal(*a.a, *b.a) && nodes_equal(*a.b, *b.b);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr surface
// ---------------------------------------------------------------------------

const char* func_name(Func f) {
  switch (f) {
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::sinh: return "sinh";
    case Func::cosh: return "cosh";
    case Func::sqrt: return "sqrt";
  }
  return "?";
}

Expr Expr::literal(Complex value) { return Expr(lit_node(value)); }

Expr Expr::variable() {
  return Expr(make_node({.kind = NodeKind::variable}));
}

Expr Expr::apply(Func f, Expr arg) {
  return Expr(apply_node(f, std::move(arg.node_)));
}

Expr Expr::pow(Expr base, int exponent) {
  return Expr(pow_node(std::move(base.node_), exponent));
}

Expr operator-(Expr e) {
  return Expr(make_node({.kind = NodeKind::negate, .a = std::move(e.node_)}));
}

Expr operator+(Expr a, Expr b) {
  return Expr(bin_node(NodeKind::add, std::move(a.node_), std::move(b.node_)));
}

Expr operator-(Expr a, Expr b) {
  return Expr(bin_node(NodeKind::sub, std::move(a.node_), std::move(b.node_)));
}

Expr operator*(Expr a, Expr b) {
  return Expr(bin_node(NodeKind::mul, std::move(a.node_), std::move(b.node_)));
}

Expr operator/(Expr a, Expr b) {
  return Expr(bin_node(NodeKind::div, std::move(a.node_), std::move(b.node_)));
}

NodeKind Expr::kind() const { return node_->kind; }
Complex Expr::value() const { return node_->value; }
int Expr::exponent() const { return node_->exponent; }
Func Expr::func() const { return node_->fn; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }

Complex Expr::eval(Complex z) const { return eval_node(*node_, z); }

bool operator==(const Expr& a, const Expr& b) {
  return nodes_equal(*a.node_, *b.node_);
}

Expr parse(std::string_view src) { return Parser(src).run(); }

Expr differentiate(const Expr& e) { return Expr(diff_node(e.node_)); }

Expr constant_fold(const Expr& e) { return Expr(fold_node(e.node_)); }

std::string to_string(const Expr& e) { return node_to_string(*e.node_); }

}  // namespace wrep
