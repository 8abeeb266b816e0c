#pragma once

#include <string>
#include <vector>

#include "moore/moore.hpp"

namespace test {

inline moore::MooreCube cube(std::vector<double> shape, std::vector<std::string> exprs,
                             moore::Space space = moore::Space::euclidean(1)) {
  std::vector<moore::Expr> parsed;
  for (const auto& e : exprs) parsed.push_back(moore::parse_expr(e));
  const std::size_t n = shape.size();
  return moore::make_expr_cube(n, moore::Shape(std::move(shape)), std::move(space), std::move(parsed));
}

// t -> t^2 on [0, 2].
inline moore::MooreCube c1() { return cube({2.0}, {"t1^2"}); }

inline double x(const moore::Point& p) { return p.at(0); }

}  // namespace test
