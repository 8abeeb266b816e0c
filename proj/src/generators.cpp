#include <sstream>

#include "moore/error.hpp"
#include "moore/law_lab.hpp"

namespace moore::lab {

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(next() % span);
}

std::size_t Rng::index(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(next() % span);
}

bool Rng::chance(double p) { return uniform(0.0, 1.0) < p; }

namespace {

double draw_extent(Rng& rng, const GenOptions& opts) {
  if (rng.chance(opts.zero_probability)) return 0.0;
  return rng.uniform(opts.min_extent, opts.max_extent);
}

std::string random_polynomial(Rng& rng, std::size_t dim, const GenOptions& opts) {
  std::vector<std::string> monomials{""};
  for (std::size_t k = 1; k <= dim; ++k) monomials.push_back("t" + std::to_string(k));
  for (std::size_t k = 1; k <= dim; ++k) {
    for (std::size_t l = k; l <= dim; ++l) monomials.push_back("t" + std::to_string(k) + "*t" + std::to_string(l));
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& m : monomials) {
    const int coef = rng.integer(-3, 3);
    if (coef == 0) continue;
    const int mag = coef < 0 ? -coef : coef;
    if (first) {
      if (coef < 0) os << '-';
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    first = false;
    if (m.empty()) {
      os << mag;
    } else if (mag == 1) {
      os << m;
    } else {
      os << mag << '*' << m;
    }
  }
  std::string body = first ? "0" : os.str();
  if (rng.chance(opts.sin_probability)) body = "sin(" + body + ")";
  return body;
}

const std::vector<Expr>& exprs_of(const MooreCube& c) {
  const auto* prim = std::get_if<Primitive>(&c.construction());
  if (prim == nullptr || prim->exprs.empty()) {
    throw FormatError("generator needs an expression cube, got a derived or native one");
  }
  return prim->exprs;
}

}  // namespace

MooreCube gen_cube(Rng& rng, std::size_t dim, const Space& space, const GenOptions& opts) {
  std::vector<double> extents(dim);
  for (auto& r : extents) r = draw_extent(rng, opts);
  std::vector<Expr> exprs;
  for (std::size_t k = 0; k < space.dim(); ++k) exprs.push_back(parse_expr(random_polynomial(rng, dim, opts)));
  return make_expr_cube(dim, Shape(std::move(extents)), space, std::move(exprs));
}

MooreCube gen_cube(std::uint64_t seed, std::size_t dim, const Space& space) {
  Rng rng(seed);
  return gen_cube(rng, dim, space);
}

MooreCube gen_successor(Rng& rng, const MooreCube& a, std::size_t j, const GenOptions& opts) {
  const auto& base = exprs_of(a);
  const std::size_t n = a.dim();
  const Expr zero = Expr::constant(0.0);
  const Expr at_end = Expr::constant(a.shape().extent(j));
  const double extent = draw_extent(rng, opts);
  std::vector<Expr> exprs;
  for (const auto& ak : base) {
    const Expr g = parse_expr(random_polynomial(rng, n, opts));
    exprs.push_back((g - g.substitute(j, zero)) + ak.substitute(j, at_end));
  }
  return make_expr_cube(n, a.shape().with_extent(j, extent), a.space(), std::move(exprs));
}

std::pair<MooreCube, MooreCube> gen_composable_pair(std::uint64_t seed, std::size_t dim, std::size_t j) {
  if (j < 1 || j > dim) throw BadIndex("composable pair direction out of range");
  Rng rng(seed);
  const Space space = Space::euclidean(rng.index(1, 2));
  MooreCube a = gen_cube(rng, dim, space);
  MooreCube b = gen_successor(rng, a, j);
  return {std::move(a), std::move(b)};
}

std::array<MooreCube, 4> gen_composable_square(Rng& rng, std::size_t dim, std::size_t i, std::size_t j,
                                               const Space& space, const GenOptions& opts) {
  if (i == j || i < 1 || j < 1 || i > dim || j > dim) throw BadIndex("square needs distinct directions");
  MooreCube a = gen_cube(rng, dim, space, opts);
  MooreCube b = gen_successor(rng, a, i, opts);
  MooreCube c = gen_successor(rng, a, j, opts);

  const Expr zero = Expr::constant(0.0);
  const Expr p0 = Expr::constant(a.shape().extent(i));
  const Expr q0 = Expr::constant(a.shape().extent(j));
  const auto& ea = exprs_of(a);
  const auto& eb = exprs_of(b);
  const auto& ec = exprs_of(c);
  std::vector<Expr> ed;
  for (std::size_t k = 0; k < ea.size(); ++k) {
    const Expr g = parse_expr(random_polynomial(rng, dim, opts));
    // Vanishes on t_i = 0 and on t_j = 0.
    const Expr bump = ((g - g.substitute(i, zero)) - g.substitute(j, zero)) + g.substitute(i, zero).substitute(j, zero);
    const Expr corner = ea[k].substitute(i, p0).substitute(j, q0);
    ed.push_back(bump + (ec[k].substitute(i, p0) + (eb[k].substitute(j, q0) - corner)));
  }
  Shape shape = a.shape().with_extent(i, b.shape().extent(i)).with_extent(j, c.shape().extent(j));
  MooreCube d = make_expr_cube(dim, std::move(shape), space, std::move(ed));
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

}  // namespace moore::lab
