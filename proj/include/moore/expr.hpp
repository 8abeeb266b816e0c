#pragma once

// Action DSL: real literals, variables t1..tn, + - * / ^, unary -, and the
// built-ins sin cos exp abs (one argument) and min max (two arguments).
//
//   expr    := term   (('+' | '-') term)*
//   term    := unary  (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' unary]
//   primary := number | 't' digits | func '(' expr [',' expr] ')' | '(' expr ')'
//
// '^' binds tighter than unary minus and is right-associative.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace moore {

class Expr {
 public:
  enum class Kind { number, variable, neg, add, sub, mul, div, pow, call };
  enum class Func { sin, cos, exp, abs, min, max };

  struct Node {
    Kind kind = Kind::number;
    double value = 0.0;         // number
    std::size_t variable = 0;   // variable: 1-based index
    Func func = Func::sin;      // call
    std::shared_ptr<const Node> lhs;  // unary operand / first argument
    std::shared_ptr<const Node> rhs;  // second operand or argument
    std::size_t begin = 0;      // source span, for diagnostics
    std::size_t end = 0;
  };

  /// The literal 0.
  Expr();

  static Expr constant(double value);
  static Expr variable(std::size_t index);

  /// Largest variable index used, 0 for constant expressions.
  std::size_t max_variable() const noexcept { return max_variable_; }

  const Node& root() const noexcept { return *root_; }

  /// Text that parses back to a structurally identical tree.
  std::string to_string() const;

  /// Replaces variable `index` by `with`, leaving all other variables intact.
  Expr substitute(std::size_t index, const Expr& with) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr sin(const Expr& a);

  explicit Expr(std::shared_ptr<const Node> root);

 private:
  std::shared_ptr<const Node> root_;
  std::size_t max_variable_ = 0;
};

/// Throws ParseError on syntax errors and unknown identifiers.
Expr parse_expr(std::string_view text);

/// `env[k]` is the value of t(k+1). Throws EvalError on division by zero or an
/// unbound variable.
double eval_expr(const Expr& e, std::span<const double> env);

/// Same tree shape, operators and literal values; source positions ignored.
bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace moore
