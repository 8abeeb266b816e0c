#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "moore/error.hpp"
#include "moore/expr.hpp"

using namespace moore;

namespace {

double run(const std::string& text, std::vector<double> env = {}) { return eval_expr(parse_expr(text), env); }

std::size_t error_offset(const std::string& text) {
  try {
    parse_expr(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

struct Case {
  const char* text;
  std::vector<double> env;
  double expected;
};

}  // namespace

TEST_CASE("regression vector") {
  const std::vector<Case> cases = {
      {"t1*t2 + sin(t1)", {0.0, 5.0}, 0.0},
      {"2+3*t1", {2.0}, 8.0},
      {"t1^2", {1.5}, 2.25},
      {"min(t1,t2)", {1.0, 1.7}, 1.0},
      {"2^3^2", {}, 512.0},
      {"-2^2", {}, -4.0},
      {"(1+2)*3", {}, 9.0},
      {"10-4-3", {}, 3.0},
      {"64/4/2", {}, 8.0},
      {"max(t1, t2) - t3", {1.0, 2.0, 0.5}, 1.5},
      {"abs(-3.5)", {}, 3.5},
      {"exp(0)", {}, 1.0},
      {"cos(0) + sin(0)", {}, 1.0},
      {"2*-t1", {3.0}, -6.0},
      {"1.5e2", {}, 150.0},
      {"t1 - -t2", {1.0, 2.0}, 3.0},
      {"2^-1", {}, 0.5},
      {"(t1+t2)^2", {1.0, 2.0}, 9.0},
      {"min(max(t1, 0.25), 0.75)", {1.0}, 0.75},
      {" 4 +\tt1 ", {2.0}, 6.0},
  };
  REQUIRE(cases.size() == 20);
  for (const auto& c : cases) {
    CAPTURE(c.text);
    CHECK(run(c.text, c.env) == c.expected);
  }
}

TEST_CASE("parse errors report byte offsets") {
  CHECK(error_offset("(t1") == 3);
  CHECK(error_offset("2+") == 2);
  CHECK(error_offset("t1 +* t2") == 4);
  CHECK(error_offset("foo(1)") == 0);
  CHECK(error_offset("1 + bar") == 4);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("1 2") == 2);
  CHECK(error_offset("max(1)") == 5);
  CHECK(error_offset("sin(1, 2)") == 5);
  CHECK(error_offset("t0") == 0);
  CHECK(error_offset("2 $ 3") == 2);

  try {
    parse_expr("(t1");
  } catch (const ParseError& e) {
    CHECK(e.expected() == std::vector<std::string>{")"});
  }
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(run("1/t1", {0.0}), EvalError);
  try {
    run("2 + 1/(t1 - 1)", {1.0});
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.begin() == 4);
    CHECK(e.end() == 14);
  }
  CHECK_THROWS_AS(run("t3", {1.0, 2.0}), EvalError);
}

TEST_CASE("variables") {
  CHECK(parse_expr("t12 + t3").max_variable() == 12);
  CHECK(parse_expr("sin(2)").max_variable() == 0);
  const Expr e = parse_expr("t1 * t2").substitute(1, Expr::constant(3.0));
  CHECK(e.max_variable() == 2);
  const std::vector<double> env{100.0, 2.0};
  CHECK(eval_expr(e, env) == 6.0);
}

TEST_CASE("printing") {
  CHECK(parse_expr("1 - (2 - 3)").to_string() == "1 - (2 - 3)");
  CHECK(parse_expr("(1 - 2) - 3").to_string() == "1 - 2 - 3");
  CHECK(parse_expr("(2^3)^2").to_string() == "(2^3)^2");
  CHECK(parse_expr("2^3^2").to_string() == "2^3^2");
  CHECK(parse_expr("(-2)^2").to_string() == "(-2)^2");
  CHECK(run(parse_expr("(-2)^2").to_string()) == 4.0);
  CHECK(parse_expr("0.1").to_string() == "0.10000000000000001");
}

namespace {

std::string random_text(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
  switch (pick(rng)) {
    case 0: return std::to_string(static_cast<int>(rng() % 10));
    case 1: return "t" + std::to_string(1 + rng() % 3);
    case 2: return "0.25";
    case 3: return random_text(rng, depth - 1) + " + " + random_text(rng, depth - 1);
    case 4: return random_text(rng, depth - 1) + " - " + random_text(rng, depth - 1);
    case 5: return random_text(rng, depth - 1) + " * " + random_text(rng, depth - 1);
    case 6: return random_text(rng, depth - 1) + " / " + random_text(rng, depth - 1);
    case 7: return random_text(rng, depth - 1) + "^" + random_text(rng, depth - 1);
    case 8: return "-" + random_text(rng, depth - 1);
    case 9: return "(" + random_text(rng, depth - 1) + ")";
    case 10: return "max(" + random_text(rng, depth - 1) + ", " + random_text(rng, depth - 1) + ")";
    default: return "sin(" + random_text(rng, depth - 1) + ")";
  }
}

}  // namespace

TEST_CASE("round trip: printing reparses to the same tree") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 2000; ++k) {
    const std::string text = random_text(rng, 5);
    CAPTURE(text);
    const Expr e = parse_expr(text);
    const Expr back = parse_expr(e.to_string());
    CHECK(structurally_equal(e, back));
    CHECK(back.to_string() == e.to_string());
  }
  const Expr sub = parse_expr("t1^2 - t2").substitute(1, parse_expr("-t2 - 1"));
  CHECK(structurally_equal(parse_expr(sub.to_string()), sub));
  const std::vector<double> env{0.0, 2.0};
  CHECK(eval_expr(parse_expr(sub.to_string()), env) == 7.0);
}
