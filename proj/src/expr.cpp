#include "moore/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "moore/error.hpp"

namespace moore {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

std::size_t max_var(const Expr::Node& n) {
  std::size_t m = n.kind == Expr::Kind::variable ? n.variable : 0;
  if (n.lhs) m = std::max(m, max_var(*n.lhs));
  if (n.rhs) m = std::max(m, max_var(*n.rhs));
  return m;
}

NodePtr make_binary(Expr::Kind kind, NodePtr lhs, NodePtr rhs, std::size_t begin, std::size_t end) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->begin = begin;
  n->end = end;
  return n;
}

struct FuncInfo {
  std::string_view name;
  Expr::Func func;
  int arity;
};

constexpr std::array<FuncInfo, 6> kFuncs{{
    {"sin", Expr::Func::sin, 1},
    {"cos", Expr::Func::cos, 1},
    {"exp", Expr::Func::exp, 1},
    {"abs", Expr::Func::abs, 1},
    {"min", Expr::Func::min, 2},
    {"max", Expr::Func::max, 2},
}};

std::string_view func_name(Expr::Func f) {
  for (const auto& info : kFuncs) {
    if (info.func == f) return info.name;
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    auto root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'", {"operator", "end of input"});
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    std::string what = "parse error at offset " + std::to_string(pos_) + ": " + msg;
    if (!expected.empty()) {
      what += " (expected ";
      for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k) what += ", ";
        what += expected[k];
      }
      what += ")";
    }
    throw ParseError(what, pos_, std::move(expected));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input",
           {std::string(1, c)});
    }
    ++pos_;
  }

  NodePtr parse_expr() {
    const std::size_t begin = (skip_space(), pos_);
    auto lhs = parse_term();
    while (peek('+') || peek('-')) {
      const auto kind = text_[pos_] == '+' ? Expr::Kind::add : Expr::Kind::sub;
      ++pos_;
      auto rhs = parse_term();
      lhs = make_binary(kind, std::move(lhs), std::move(rhs), begin, pos_);
    }
    return lhs;
  }

  NodePtr parse_term() {
    const std::size_t begin = (skip_space(), pos_);
    auto lhs = parse_unary();
    while (peek('*') || peek('/')) {
      const auto kind = text_[pos_] == '*' ? Expr::Kind::mul : Expr::Kind::div;
      ++pos_;
      auto rhs = parse_unary();
      lhs = make_binary(kind, std::move(lhs), std::move(rhs), begin, pos_);
    }
    return lhs;
  }

  NodePtr parse_unary() {
    skip_space();
    const std::size_t begin = pos_;
    if (peek('-')) {
      ++pos_;
      auto operand = parse_unary();
      return make_binary(Expr::Kind::neg, std::move(operand), nullptr, begin, pos_);
    }
    return parse_power();
  }

  NodePtr parse_power() {
    const std::size_t begin = (skip_space(), pos_);
    auto base = parse_primary();
    if (peek('^')) {
      ++pos_;
      auto exponent = parse_unary();
      return make_binary(Expr::Kind::pow, std::move(base), std::move(exponent), begin, pos_);
    }
    return base;
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  NodePtr parse_primary() {
    skip_space();
    const std::size_t begin = pos_;
    if (pos_ >= text_.size()) {
      fail("unexpected end of input", {"number", "variable", "function", "(", "-"});
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && (is_ident_start(text_[end]) || is_digit(text_[end]))) ++end;
      const std::string_view ident = text_.substr(pos_, end - pos_);
      if (ident.size() >= 2 && ident[0] == 't' &&
          std::all_of(ident.begin() + 1, ident.end(), is_digit)) {
        std::size_t index = 0;
        const auto res = std::from_chars(ident.data() + 1, ident.data() + ident.size(), index);
        if (res.ec == std::errc() && index >= 1) {
          pos_ = end;
          auto n = std::make_shared<Expr::Node>();
          n->kind = Expr::Kind::variable;
          n->variable = index;
          n->begin = begin;
          n->end = end;
          return n;
        }
      }
      for (const auto& info : kFuncs) {
        if (info.name == ident) {
          pos_ = end;
          return parse_call(info, begin);
        }
      }
      fail("unknown identifier '" + std::string(ident) + "'", {"variable t1..tn", "function"});
    }
    fail("unexpected '" + std::string(1, c) + "'", {"number", "variable", "function", "(", "-"});
  }

  NodePtr parse_call(const FuncInfo& info, std::size_t begin) {
    expect('(');
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::call;
    n->func = info.func;
    n->lhs = parse_expr();
    if (info.arity == 2) {
      expect(',');
      n->rhs = parse_expr();
    }
    expect(')');
    n->begin = begin;
    n->end = pos_;
    return n;
  }

  NodePtr parse_number() {
    const std::size_t begin = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && is_digit(text_[end])) ++end;
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) ++end;
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && is_digit(text_[k])) {
        while (k < text_.size() && is_digit(text_[k])) ++k;
        end = k;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + begin, text_.data() + end, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + end) {
      fail("malformed number", {"number"});
    }
    pos_ = end;
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::number;
    n->value = value;
    n->begin = begin;
    n->end = end;
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, std::span<const double> env) {
  switch (n.kind) {
    case Expr::Kind::number:
      return n.value;
    case Expr::Kind::variable:
      if (n.variable == 0 || n.variable > env.size()) {
        throw EvalError("unbound variable t" + std::to_string(n.variable), n.begin, n.end);
      }
      return env[n.variable - 1];
    case Expr::Kind::neg:
      return -eval_node(*n.lhs, env);
    case Expr::Kind::add:
      return eval_node(*n.lhs, env) + eval_node(*n.rhs, env);
    case Expr::Kind::sub:
      return eval_node(*n.lhs, env) - eval_node(*n.rhs, env);
    case Expr::Kind::mul:
      return eval_node(*n.lhs, env) * eval_node(*n.rhs, env);
    case Expr::Kind::div: {
      const double num = eval_node(*n.lhs, env);
      const double den = eval_node(*n.rhs, env);
      if (den == 0.0) throw EvalError("division by zero", n.begin, n.end);
      return num / den;
    }
    case Expr::Kind::pow:
      return std::pow(eval_node(*n.lhs, env), eval_node(*n.rhs, env));
    case Expr::Kind::call: {
      const double a = eval_node(*n.lhs, env);
      switch (n.func) {
        case Expr::Func::sin: return std::sin(a);
        case Expr::Func::cos: return std::cos(a);
        case Expr::Func::exp: return std::exp(a);
        case Expr::Func::abs: return std::fabs(a);
        case Expr::Func::min: return std::min(a, eval_node(*n.rhs, env));
        case Expr::Func::max: return std::max(a, eval_node(*n.rhs, env));
      }
    }
  }
  return 0.0;
}

// Binding strength used by the printer: + - 1, * / 2, unary 3, ^ 4, atoms 5.
// Negative literals (only built programmatically) print like a unary minus.
int precedence(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    case Expr::Kind::number: return std::signbit(n.value) ? 3 : 5;
    default: return 5;
  }
}

void print(const Expr::Node& n, std::string& out);

void print_at(const Expr::Node& n, int min_prec, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

void print(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::number: {
      std::array<char, 32> buf{};
      std::snprintf(buf.data(), buf.size(), "%.17g", n.value);
      out += buf.data();
      return;
    }
    case Expr::Kind::variable:
      out += "t" + std::to_string(n.variable);
      return;
    case Expr::Kind::neg:
      out += '-';
      print_at(*n.lhs, 3, out);
      return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
      print_at(*n.lhs, 1, out);
      out += n.kind == Expr::Kind::add ? " + " : " - ";
      print_at(*n.rhs, 2, out);
      return;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      print_at(*n.lhs, 2, out);
      out += n.kind == Expr::Kind::mul ? "*" : "/";
      print_at(*n.rhs, 3, out);
      return;
    case Expr::Kind::pow:
      print_at(*n.lhs, 5, out);
      out += '^';
      print_at(*n.rhs, 3, out);
      return;
    case Expr::Kind::call:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, out);
      if (n.rhs) {
        out += ", ";
        print(*n.rhs, out);
      }
      out += ')';
      return;
  }
}

NodePtr substitute_node(const NodePtr& n, std::size_t index, const NodePtr& with) {
  if (n->kind == Expr::Kind::variable) return n->variable == index ? with : n;
  if (!n->lhs) return n;
  auto lhs = substitute_node(n->lhs, index, with);
  auto rhs = n->rhs ? substitute_node(n->rhs, index, with) : nullptr;
  if (lhs == n->lhs && rhs == n->rhs) return n;
  auto copy = std::make_shared<Expr::Node>(*n);
  copy->lhs = std::move(lhs);
  copy->rhs = std::move(rhs);
  return copy;
}

bool same_tree(const Expr::Node& a, const Expr::Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::number:
      return a.value == b.value || (std::isnan(a.value) && std::isnan(b.value));
    case Expr::Kind::variable:
      return a.variable == b.variable;
    case Expr::Kind::call:
      if (a.func != b.func) return false;
      break;
    default:
      break;
  }
  if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  return (!a.lhs || same_tree(*a.lhs, *b.lhs)) && (!a.rhs || same_tree(*a.rhs, *b.rhs));
}

}  // namespace

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> root) : root_(std::move(root)), max_variable_(max_var(*root_)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index) {
  if (index == 0) throw BadIndex("variables are numbered from t1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->variable = index;
  return Expr(std::move(n));
}

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expr Expr::substitute(std::size_t index, const Expr& with) const {
  return Expr(substitute_node(root_, index, with.root_));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_binary(Expr::Kind::add, a.root_, b.root_, 0, 0)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_binary(Expr::Kind::sub, a.root_, b.root_, 0, 0)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_binary(Expr::Kind::mul, a.root_, b.root_, 0, 0)); }

Expr sin(const Expr& a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::call;
  n->func = Expr::Func::sin;
  n->lhs = a.root_;
  return Expr(std::move(n));
}

Expr parse_expr(std::string_view text) { return Expr(Parser(text).parse()); }

double eval_expr(const Expr& e, std::span<const double> env) { return eval_node(e.root(), env); }

bool structurally_equal(const Expr& a, const Expr& b) { return same_tree(a.root(), b.root()); }

}  // namespace moore
