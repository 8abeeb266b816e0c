#include "moore/law_lab.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <sstream>

#include <json.hpp>

#include "moore/compose.hpp"
#include "moore/error.hpp"
#include "moore/ops.hpp"
#include "moore/tensor.hpp"

namespace moore::lab {

namespace {

struct Composer {
  const EqualityOracle& oracle;
  bool lenient;

  MooreCube operator()(const MooreCube& a, const MooreCube& b, std::size_t j) const {
    return lenient ? compose_lenient(a, b, j, oracle) : compose_strict(a, b, j, oracle);
  }
  MooreCube grid(const CubeGrid& g) const { return lenient ? multi_compose_lenient(g, oracle) : multi_compose(g, oracle); }
};

struct Ctx {
  Composer lhs;
  Composer rhs;
};

using Maker = LawInstance (*)(Rng&);
using Sides = std::vector<Equation> (*)(const LawInstance&, const Ctx&);

struct LawDef {
  const char* id;
  Maker make;
  Sides sides;
};

Space pick_space(Rng& rng) { return Space::euclidean(rng.index(1, 2)); }

// Uniform in [lo, hi] minus {skip}.
std::size_t pick_other(Rng& rng, std::size_t lo, std::size_t hi, std::size_t skip) {
  std::size_t v = rng.index(lo, hi - 1);
  if (v >= skip) ++v;
  return v;
}

LawInstance single(Rng& rng, std::size_t n, std::vector<std::size_t> indices, std::vector<Sign> signs) {
  LawInstance inst;
  inst.cubes.push_back(gen_cube(rng, n, pick_space(rng)));
  inst.indices = std::move(indices);
  inst.signs = std::move(signs);
  return inst;
}

LawInstance pair(Rng& rng, std::size_t n, std::size_t j, std::vector<std::size_t> extra, std::vector<Sign> signs) {
  LawInstance inst;
  MooreCube a = gen_cube(rng, n, pick_space(rng));
  MooreCube b = gen_successor(rng, a, j);
  inst.cubes = {a, b};
  inst.indices = {j};
  inst.indices.insert(inst.indices.end(), extra.begin(), extra.end());
  inst.signs = std::move(signs);
  return inst;
}

std::vector<Equation> one(std::string label, MooreCube lhs, MooreCube rhs) {
  std::vector<Equation> v;
  v.push_back({std::move(label), std::move(lhs), std::move(rhs)});
  return v;
}

CubeGrid transport_grid(bool plus_law, const MooreCube& a, const MooreCube& b, std::size_t j) {
  if (plus_law) {
    return CubeGrid::square(j, j + 1, connection(a, j, Sign::plus), degeneracy(a, j), degeneracy(a, j + 1),
                            connection(b, j, Sign::plus));
  }
  return CubeGrid::square(j, j + 1, connection(a, j, Sign::minus), degeneracy(b, j + 1), degeneracy(b, j),
                          connection(b, j, Sign::minus));
}

const std::vector<LawDef>& registry() {
  static const std::vector<LawDef> defs = {
      {"3.1.i",
       [](Rng& rng) {
         const std::size_t n = rng.index(2, 4);
         const std::size_t j = rng.index(2, n);
         const std::size_t i = rng.index(1, j - 1);
         return single(rng, n, {i, j}, {rng.sign(), rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         const auto a = x.signs[0], b = x.signs[1];
         return one("face(face(c,j,b),i,a) = face(face(c,i,a),j-1,b)", face(face(c, j, b), i, a),
                    face(face(c, i, a), j - 1, b));
       }},
      {"3.1.ii",
       [](Rng& rng) {
         const std::size_t n = rng.index(0, 2);
         const std::size_t j = rng.index(1, n + 1);
         const std::size_t i = rng.index(1, j);
         return single(rng, n, {i, j}, {});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         return one("deg(deg(c,j),i) = deg(deg(c,i),j+1)", degeneracy(degeneracy(c, j), i),
                    degeneracy(degeneracy(c, i), j + 1));
       }},
      {"3.1.iii.lt",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         const std::size_t j = rng.index(2, n + 1);
         const std::size_t i = rng.index(1, j - 1);
         return single(rng, n, {i, j}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         const auto a = x.signs[0];
         return one("face(deg(c,j),i,a) = deg(face(c,i,a),j-1)", face(degeneracy(c, j), i, a),
                    degeneracy(face(c, i, a), j - 1));
       }},
      {"3.1.iii.gt",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         const std::size_t j = rng.index(1, n);
         const std::size_t i = rng.index(j + 1, n + 1);
         return single(rng, n, {i, j}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         const auto a = x.signs[0];
         return one("face(deg(c,j),i,a) = deg(face(c,i-1,a),j)", face(degeneracy(c, j), i, a),
                    degeneracy(face(c, i - 1, a), j));
       }},
      {"3.1.iii.eq",
       [](Rng& rng) {
         const std::size_t n = rng.index(0, 3);
         const std::size_t j = rng.index(1, n + 1);
         return single(rng, n, {j}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         return one("face(deg(c,j),j,a) = c", face(degeneracy(c, x.indices[0]), x.indices[0], x.signs[0]), c);
       }},
      {"3.2.i",
       [](Rng& rng) {
         const std::size_t n = rng.index(2, 3);
         const std::size_t j = rng.index(2, n);
         const std::size_t i = rng.index(1, j - 1);
         return single(rng, n, {i, j}, {rng.sign(), rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         const auto a = x.signs[0], b = x.signs[1];
         return one("conn(conn(c,j,b),i,a) = conn(conn(c,i,a),j+1,b)", connection(connection(c, j, b), i, a),
                    connection(connection(c, i, a), j + 1, b));
       }},
      {"3.2.ii",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 2);
         return single(rng, n, {rng.index(1, n)}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0];
         const auto a = x.signs[0];
         return one("conn(conn(c,i,a),i,a) = conn(conn(c,i,a),i+1,a)", connection(connection(c, i, a), i, a),
                    connection(connection(c, i, a), i + 1, a));
       }},
      {"3.2.iii",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 2);
         const std::size_t j = rng.index(1, n + 1);
         const std::size_t i = pick_other(rng, 1, n + 1, j);
         return single(rng, n, {i, j}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         const auto a = x.signs[0];
         if (i < j) {
           return one("conn(deg(c,j),i,a) = deg(conn(c,i,a),j+1)", connection(degeneracy(c, j), i, a),
                      degeneracy(connection(c, i, a), j + 1));
         }
         return one("conn(deg(c,j),i,a) = deg(conn(c,i-1,a),j)", connection(degeneracy(c, j), i, a),
                    degeneracy(connection(c, i - 1, a), j));
       }},
      {"3.2.iv",
       [](Rng& rng) {
         const std::size_t n = rng.index(0, 2);
         return single(rng, n, {rng.index(1, n + 1)}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto j = x.indices[0];
         const MooreCube lhs = connection(degeneracy(c, j), j, x.signs[0]);
         std::vector<Equation> v;
         v.push_back({"conn(deg(c,j),j,a) = deg(deg(c,j),j)", lhs, degeneracy(degeneracy(c, j), j)});
         v.push_back({"conn(deg(c,j),j,a) = deg(deg(c,j),j+1)", lhs, degeneracy(degeneracy(c, j), j + 1)});
         return v;
       }},
      {"3.2.v",
       [](Rng& rng) {
         const std::size_t n = rng.index(2, 3);
         std::vector<std::pair<std::size_t, std::size_t>> pairs;
         for (std::size_t j = 1; j <= n; ++j) {
           for (std::size_t i = 1; i <= n + 1; ++i) {
             if (i < j || i > j + 1) pairs.emplace_back(i, j);
           }
         }
         const auto [i, j] = pairs[rng.index(0, pairs.size() - 1)];
         return single(rng, n, {i, j}, {rng.sign(), rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0], j = x.indices[1];
         const auto a = x.signs[0], b = x.signs[1];
         if (i < j) {
           return one("face(conn(c,j,b),i,a) = conn(face(c,i,a),j-1,b)", face(connection(c, j, b), i, a),
                      connection(face(c, i, a), j - 1, b));
         }
         return one("face(conn(c,j,b),i,a) = conn(face(c,i-1,a),j,b)", face(connection(c, j, b), i, a),
                    connection(face(c, i - 1, a), j, b));
       }},
      {"3.2.vi",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         return single(rng, n, {rng.index(1, n)}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto j = x.indices[0];
         const auto a = x.signs[0];
         const MooreCube g = connection(c, j, a);
         std::vector<Equation> v;
         v.push_back({"face(conn(c,j,a),j,a) = c", face(g, j, a), c});
         v.push_back({"face(conn(c,j,a),j+1,a) = c", face(g, j + 1, a), c});
         return v;
       }},
      {"3.2.vii",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         return single(rng, n, {rng.index(1, n)}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto j = x.indices[0];
         const auto a = x.signs[0];
         const MooreCube g = connection(c, j, opposite(a));
         const MooreCube rhs = degeneracy(face(c, j, a), j);
         std::vector<Equation> v;
         v.push_back({"face(conn(c,j,-a),j,a) = deg(face(c,j,a),j)", face(g, j, a), rhs});
         v.push_back({"face(conn(c,j,-a),j+1,a) = deg(face(c,j,a),j)", face(g, j + 1, a), rhs});
         return v;
       }},
      {"3.3.bounds",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         return pair(rng, n, rng.index(1, n), {}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0];
         const MooreCube ab = ctx.lhs(a, b, j);
         std::vector<Equation> v;
         v.push_back({"face(a.j b,j,-) = face(a,j,-)", face(ab, j, Sign::minus), face(a, j, Sign::minus)});
         v.push_back({"face(a.j b,j,+) = face(b,j,+)", face(ab, j, Sign::plus), face(b, j, Sign::plus)});
         return v;
       }},
      {"3.3.other",
       [](Rng& rng) {
         const std::size_t n = rng.index(2, 3);
         const std::size_t j = rng.index(1, n);
         return pair(rng, n, j, {pick_other(rng, 1, n, j)}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0], i = x.indices[1];
         const auto s = x.signs[0];
         const std::size_t k = i < j ? j - 1 : j;
         return one(i < j ? "face(a.j b,i,a) = face(a,i,a) .(j-1) face(b,i,a)" : "face(a.j b,i,a) = face(a,i,a) .j face(b,i,a)",
                    face(ctx.lhs(a, b, j), i, s), ctx.rhs(face(a, i, s), face(b, i, s), k));
       }},
      {"3.4",
       [](Rng& rng) {
         const std::size_t n = rng.index(2, 3);
         const std::size_t i = rng.index(1, n);
         const std::size_t j = pick_other(rng, 1, n, i);
         LawInstance inst;
         auto sq = gen_composable_square(rng, n, i, j, pick_space(rng));
         inst.cubes.assign(sq.begin(), sq.end());
         inst.indices = {i, j};
         return inst;
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& [a, b, c, d] = std::tie(x.cubes[0], x.cubes[1], x.cubes[2], x.cubes[3]);
         const auto i = x.indices[0], j = x.indices[1];
         return one("(a.i b).j (c.i d) = (a.j c).i (b.j d)", ctx.lhs(ctx.lhs(a, b, i), ctx.lhs(c, d, i), j),
                    ctx.rhs(ctx.rhs(a, c, j), ctx.rhs(b, d, j), i));
       }},
      {"3.5",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         const std::size_t j = rng.index(1, n);
         return pair(rng, n, j, {rng.index(1, n + 1)}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0], i = x.indices[1];
         const std::size_t k = i <= j ? j + 1 : j;
         return one(i <= j ? "deg(a.j b,i) = deg(a,i) .(j+1) deg(b,i)" : "deg(a.j b,i) = deg(a,i) .j deg(b,i)",
                    degeneracy(ctx.lhs(a, b, j), i), ctx.rhs(degeneracy(a, i), degeneracy(b, i), k));
       }},
      {"3.6.i",
       [](Rng& rng) {
         const std::size_t n = rng.index(2, 3);
         const std::size_t j = rng.index(1, n);
         return pair(rng, n, j, {pick_other(rng, 1, n, j)}, {rng.sign()});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0], i = x.indices[1];
         const auto s = x.signs[0];
         const std::size_t k = i < j ? j + 1 : j;
         return one(i < j ? "conn(a.j b,i,a) = conn(a,i,a) .(j+1) conn(b,i,a)" : "conn(a.j b,i,a) = conn(a,i,a) .j conn(b,i,a)",
                    connection(ctx.lhs(a, b, j), i, s), ctx.rhs(connection(a, i, s), connection(b, i, s), k));
       }},
      {"3.6.ii",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 2);
         return pair(rng, n, rng.index(1, n), {}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0];
         return one("conn(a.j b,j,+) = [[conn(a,j,+), deg(a,j)], [deg(a,j+1), conn(b,j,+)]]",
                    connection(ctx.lhs(a, b, j), j, Sign::plus), ctx.rhs.grid(transport_grid(true, a, b, j)));
       }},
      {"3.6.iii",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 2);
         return pair(rng, n, rng.index(1, n), {}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0];
         return one("conn(a.j b,j,-) = [[conn(a,j,-), deg(b,j+1)], [deg(b,j), conn(b,j,-)]]",
                    connection(ctx.lhs(a, b, j), j, Sign::minus), ctx.rhs.grid(transport_grid(false, a, b, j)));
       }},
      {"2.7.first",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         return single(rng, n, {rng.index(1, n)}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0];
         return one("conn(x,i,+) .i conn(x,i,-) = deg(x,i+1)",
                    ctx.lhs(connection(c, i, Sign::plus), connection(c, i, Sign::minus), i), degeneracy(c, i + 1));
       }},
      {"2.7.second",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         return single(rng, n, {rng.index(1, n)}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0];
         return one("conn(x,i,+) .(i+1) conn(x,i,-) = deg(x,i)",
                    ctx.lhs(connection(c, i, Sign::plus), connection(c, i, Sign::minus), i + 1), degeneracy(c, i));
       }},
      {"assoc",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 4);
         const std::size_t j = rng.index(1, n);
         LawInstance inst = pair(rng, n, j, {}, {});
         inst.cubes.push_back(gen_successor(rng, inst.cubes[1], j));
         return inst;
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto& c = x.cubes[2];
         const auto j = x.indices[0];
         return one("(a.j b).j c = a.j (b.j c)", ctx.lhs(ctx.lhs(a, b, j), c, j), ctx.rhs(a, ctx.rhs(b, c, j), j));
       }},
      {"ident.left",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 4);
         return single(rng, n, {rng.index(1, n)}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto j = x.indices[0];
         return one("deg(face(a,j,-),j) .j a = a", ctx.rhs(degeneracy(face(a, j, Sign::minus), j), a, j), a);
       }},
      {"ident.right",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 4);
         return single(rng, n, {rng.index(1, n)}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto j = x.indices[0];
         return one("a .j deg(face(a,j,+),j) = a", ctx.rhs(a, degeneracy(face(a, j, Sign::plus), j), j), a);
       }},
      {"rev.involution",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 4);
         return single(rng, n, {rng.index(1, n)}, {});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         return one("rev(rev(c,i),i) = c", reverse(reverse(c, x.indices[0]), x.indices[0]), c);
       }},
      {"rev.faces",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 4);
         return single(rng, n, {rng.index(1, n)}, {});
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& c = x.cubes[0];
         const auto i = x.indices[0];
         const MooreCube r = reverse(c, i);
         std::vector<Equation> v;
         v.push_back({"face(rev(c,i),i,-) = face(c,i,+)", face(r, i, Sign::minus), face(c, i, Sign::plus)});
         v.push_back({"face(rev(c,i),i,+) = face(c,i,-)", face(r, i, Sign::plus), face(c, i, Sign::minus)});
         return v;
       }},
      {"rev.antihom",
       [](Rng& rng) {
         const std::size_t n = rng.index(1, 3);
         return pair(rng, n, rng.index(1, n), {}, {});
       },
       [](const LawInstance& x, const Ctx& ctx) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto j = x.indices[0];
         return one("rev(a.j b,j) = rev(b,j) .j rev(a,j)", reverse(ctx.lhs(a, b, j), j),
                    ctx.rhs(reverse(b, j), reverse(a, j), j));
       }},
      {"tensor.shape",
       [](Rng& rng) {
         LawInstance inst;
         const std::size_t m = rng.index(0, 2);
         const std::size_t n = rng.index(0, 2);
         inst.cubes.push_back(gen_cube(rng, m, pick_space(rng)));
         inst.cubes.push_back(gen_cube(rng, n, pick_space(rng)));
         return inst;
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const std::size_t m = a.dim();
         NativeAction pairwise = [a, b, m](std::span<const double> t) {
           Point p = a.eval(t.first(m));
           const Point q = b.eval(t.subspan(m));
           p.insert(p.end(), q.begin(), q.end());
           return p;
         };
         MooreCube direct = make_cube(m + b.dim(), a.shape().concat(b.shape()), Space::product(a.space(), b.space()),
                                      std::move(pairwise), "pairwise");
         return one("a (x) b = (t, u) -> (a(t), b(u)) on shape (r)(s)", tensor(a, b), direct);
       }},
      {"tensor.faces",
       [](Rng& rng) {
         LawInstance inst;
         const std::size_t m = rng.index(0, 2);
         const std::size_t n = m == 0 ? rng.index(1, 2) : rng.index(0, 2);
         inst.cubes.push_back(gen_cube(rng, m, pick_space(rng)));
         inst.cubes.push_back(gen_cube(rng, n, pick_space(rng)));
         inst.indices = {rng.index(1, m + n)};
         inst.signs = {rng.sign()};
         return inst;
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto i = x.indices[0];
         const auto s = x.signs[0];
         const std::size_t m = a.dim();
         if (i <= m) return one("face(a (x) b,i,a) = face(a,i,a) (x) b", face(tensor(a, b), i, s), tensor(face(a, i, s), b));
         return one("face(a (x) b,i,a) = a (x) face(b,i-m,a)", face(tensor(a, b), i, s), tensor(a, face(b, i - m, s)));
       }},
      {"tensor.assoc",
       [](Rng& rng) {
         LawInstance inst;
         std::size_t budget = 4;
         for (int k = 0; k < 3; ++k) {
           const std::size_t d = rng.index(0, std::min<std::size_t>(budget, 2));
           budget -= d;
           inst.cubes.push_back(gen_cube(rng, d, pick_space(rng)));
         }
         return inst;
       },
       [](const LawInstance& x, const Ctx&) {
         const auto& a = x.cubes[0];
         const auto& b = x.cubes[1];
         const auto& c = x.cubes[2];
         return one("(a (x) b) (x) c = a (x) (b (x) c) after flattening", canonical(tensor(tensor(a, b), c)),
                    canonical(tensor(a, tensor(b, c))));
       }},
  };
  return defs;
}

const LawDef& find_law(std::string_view id) {
  for (const auto& d : registry()) {
    if (d.id == id) return d;
  }
  throw UnknownLaw("unknown law '" + std::string(id) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Remark 2's example x = (t -> t, (1)) in direction 1.
std::optional<LawInstance> pinned_instance(std::string_view id, std::uint64_t seed) {
  if (id != "2.7.first" && id != "2.7.second") return std::nullopt;
  LawInstance inst;
  inst.seed = seed;
  inst.cubes.push_back(make_expr_cube(1, Shape{1.0}, Space::euclidean(1), {parse_expr("t1")}));
  inst.indices = {1};
  return inst;
}

SideWitness side_witness(const LawInstance& inst, const Equation& eq, std::optional<Witness> w) {
  SideWitness s;
  s.instance_seed = inst.seed;
  s.instance = inst.description();
  s.equation = eq.label;
  if (w) s.witness = std::move(*w);
  s.lhs_shape = eq.lhs.shape();
  s.rhs_shape = eq.rhs.shape();
  return s;
}

std::optional<bool> pairwise_transport(std::string_view id, const LawInstance& inst, const MooreCube& lhs,
                                       const EqualityOracle& oracle) {
  if (id != "3.6.ii" && id != "3.6.iii") return std::nullopt;
  const CubeGrid g = transport_grid(id == "3.6.ii", inst.cubes[0], inst.cubes[1], inst.indices[0]);
  const std::size_t j = inst.indices[0];
  const auto& cells = g.cells();
  try {
    const MooreCube bottom = compose_lenient(cells[0], cells[2], j, oracle);
    const MooreCube top = compose_lenient(cells[1], cells[3], j, oracle);
    return compare_action(lhs, compose_lenient(bottom, top, j + 1, oracle), oracle).equal;
  } catch (const CompositionUndefined&) {
    return false;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += fmt(v[k]);
  }
  return s + ")";
}

}  // namespace

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::holds_strict: return "HOLDS_STRICT";
    case Classification::holds_action: return "HOLDS_ACTION";
    case Classification::fails: return "FAILS";
    case Classification::not_constructible_strictly: return "NOT_CONSTRUCTIBLE_STRICTLY";
  }
  return "?";
}

std::string LawInstance::description() const {
  std::ostringstream os;
  os << "seed=" << seed << " cubes=[";
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    const auto& c = cubes[k];
    if (k) os << "; ";
    os << "shape " << c.shape().to_string() << " in " << c.space().to_string();
    if (const auto* p = std::get_if<Primitive>(&c.construction()); p != nullptr && !p->exprs.empty()) {
      os << " f=(";
      for (std::size_t e = 0; e < p->exprs.size(); ++e) os << (e ? ", " : "") << p->exprs[e].to_string();
      os << ")";
    }
  }
  os << "] indices=[";
  for (std::size_t k = 0; k < indices.size(); ++k) os << (k ? "," : "") << indices[k];
  os << "] signs=[";
  for (std::size_t k = 0; k < signs.size(); ++k) os << (k ? "," : "") << sign_char(signs[k]);
  os << "]";
  return os.str();
}

const std::vector<std::string>& law_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.emplace_back(d.id);
    return v;
  }();
  return ids;
}

std::uint64_t instance_seed(std::uint64_t seed, std::string_view law_id, std::size_t k) {
  return splitmix64(seed ^ splitmix64(fnv1a(law_id) + k));
}

LawInstance make_instance(std::string_view law_id, std::uint64_t seed) {
  const LawDef& def = find_law(law_id);
  Rng rng(seed);
  LawInstance inst = def.make(rng);
  inst.seed = seed;
  return inst;
}

std::vector<Equation> law_sides(std::string_view law_id, const LawInstance& inst, const EqualityOracle& oracle,
                                bool lenient) {
  const LawDef& def = find_law(law_id);
  const Ctx ctx{Composer{oracle, false}, Composer{oracle, lenient}};
  return def.sides(inst, ctx);
}

InstanceResult evaluate_instance(std::string_view law_id, const LawInstance& inst, const EqualityOracle& oracle) {
  InstanceResult res;
  std::vector<Equation> eqs;
  try {
    eqs = law_sides(law_id, inst, oracle, false);
  } catch (const CompositionUndefined&) {
    res.not_constructible = true;
    try {
      eqs = law_sides(law_id, inst, oracle, true);
    } catch (const CompositionUndefined& e) {
      const auto& d = e.details();
      res.status = InstanceStatus::failed;
      SideWitness s;
      s.instance_seed = inst.seed;
      s.instance = inst.description();
      s.equation = std::string("lenient rebuild undefined: ") + e.what();
      s.witness = Witness{d.witness_point, d.left_value, d.right_value, d.distance};
      res.witness = std::move(s);
      return res;
    }
  }

  if (res.not_constructible) {
    res.lenient_shape_exact = std::all_of(eqs.begin(), eqs.end(), [](const Equation& e) {
      return shapes_close(e.lhs.shape(), e.rhs.shape(), 0.0);
    });
    if (!eqs.empty()) res.pairwise_lenient_action = pairwise_transport(law_id, inst, eqs.front().lhs, oracle);
  }

  for (const auto& eq : eqs) {
    if (compare_strict(eq.lhs, eq.rhs, oracle).equal) continue;
    Comparison act = compare_action(eq.lhs, eq.rhs, oracle);
    if (act.equal) {
      if (res.status == InstanceStatus::strict) res.status = InstanceStatus::action_only;
      if (!res.shape_mismatch) res.shape_mismatch = side_witness(inst, eq, std::nullopt);
    } else {
      res.status = InstanceStatus::failed;
      if (!res.witness) res.witness = side_witness(inst, eq, act.witness);
    }
  }
  return res;
}

LawOutcome check_law(std::string_view law_id, std::size_t n_instances, std::uint64_t seed,
                     const EqualityOracle& oracle) {
  find_law(law_id);
  oracle.validate();
  LawOutcome out;
  out.law_id = std::string(law_id);
  for (std::size_t k = 0; k < n_instances; ++k) {
    const std::uint64_t s = instance_seed(seed, law_id, k);
    std::optional<LawInstance> pinned = k == 0 ? pinned_instance(law_id, s) : std::nullopt;
    const LawInstance inst = pinned ? std::move(*pinned) : make_instance(law_id, s);
    InstanceResult r = evaluate_instance(law_id, inst, oracle);
    ++out.instances_run;
    switch (r.status) {
      case InstanceStatus::strict: ++out.count_strict; break;
      case InstanceStatus::action_only: ++out.count_action_only; break;
      case InstanceStatus::failed: ++out.count_failed; break;
    }
    if (r.not_constructible) {
      ++out.count_not_constructible;
      if (r.lenient_shape_exact) ++out.count_lenient_shape_exact;
    }
    if (r.pairwise_lenient_action) {
      if (!out.count_pairwise_lenient_action) out.count_pairwise_lenient_action = 0;
      if (*r.pairwise_lenient_action) ++*out.count_pairwise_lenient_action;
    }
    if (r.witness && !out.witness) out.witness = std::move(r.witness);
    if (r.shape_mismatch && !out.shape_mismatch) out.shape_mismatch = std::move(r.shape_mismatch);
  }
  if (out.count_not_constructible > 0) {
    out.classification = Classification::not_constructible_strictly;
  } else if (out.count_failed > 0) {
    out.classification = Classification::fails;
  } else if (out.count_action_only > 0) {
    out.classification = Classification::holds_action;
  } else {
    out.classification = Classification::holds_strict;
  }
  return out;
}

LawReport run_suite(const SuiteConfig& config) {
  config.oracle.validate();
  LawReport report;
  report.config = config;
  const auto& ids = law_ids();
  if (config.parallel) {
    std::vector<std::future<LawOutcome>> jobs;
    for (const auto& id : ids) {
      jobs.push_back(std::async(std::launch::async,
                                [&config, id] { return check_law(id, config.instances, config.seed, config.oracle); }));
    }
    for (auto& j : jobs) report.outcomes.push_back(j.get());
  } else {
    for (const auto& id : ids) report.outcomes.push_back(check_law(id, config.instances, config.seed, config.oracle));
  }
  return report;
}

namespace {

nlohmann::ordered_json to_json(const SideWitness& s) {
  nlohmann::ordered_json j;
  j["instance_seed"] = s.instance_seed;
  j["instance"] = s.instance;
  j["equation"] = s.equation;
  j["point"] = s.witness.point;
  j["lhs_value"] = s.witness.left_value;
  j["rhs_value"] = s.witness.right_value;
  j["distance"] = s.witness.distance;
  j["lhs_shape"] = s.lhs_shape.values();
  j["rhs_shape"] = s.rhs_shape.values();
  return j;
}

}  // namespace

std::string report_json(const LawReport& report) {
  nlohmann::ordered_json doc;
  const auto& c = report.config;
  doc["config"] = {{"seed", c.seed},
                   {"instances", c.instances},
                   {"oracle",
                    {{"samples_per_axis", c.oracle.samples_per_axis},
                     {"beyond_margin", c.oracle.beyond_margin},
                     {"tol_val", c.oracle.tol_val},
                     {"tol_shape", c.oracle.tol_shape}}}};
  auto laws = nlohmann::ordered_json::array();
  for (const auto& o : report.outcomes) {
    nlohmann::ordered_json j;
    j["law_id"] = o.law_id;
    j["classification"] = std::string(to_string(o.classification));
    j["instances_run"] = o.instances_run;
    j["count_strict"] = o.count_strict;
    j["count_action_only"] = o.count_action_only;
    j["count_failed"] = o.count_failed;
    j["count_not_constructible"] = o.count_not_constructible;
    if (o.count_not_constructible > 0) j["count_lenient_shape_exact"] = o.count_lenient_shape_exact;
    if (o.count_pairwise_lenient_action) j["count_pairwise_lenient_action"] = *o.count_pairwise_lenient_action;
    if (o.witness) j["witness"] = to_json(*o.witness);
    if (o.shape_mismatch) {
      j["shape_mismatch"] = {{"instance_seed", o.shape_mismatch->instance_seed},
                             {"equation", o.shape_mismatch->equation},
                             {"lhs_shape", o.shape_mismatch->lhs_shape.values()},
                             {"rhs_shape", o.shape_mismatch->rhs_shape.values()}};
    }
    laws.push_back(std::move(j));
  }
  doc["laws"] = std::move(laws);
  return doc.dump(2) + "\n";
}

std::string status_table(const LawReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-15s %-27s %5s %6s %6s %6s %7s  %s\n", "law", "classification", "run", "strict",
                "action", "failed", "nonstr", "note");
  os << line;
  for (const auto& o : report.outcomes) {
    std::string note;
    if (o.witness && !o.witness->witness.point.empty()) {
      note = "at " + fmt(o.witness->witness.point) + " lhs " + fmt(o.witness->witness.left_value) + " rhs " +
             fmt(o.witness->witness.right_value) + ", shapes " + fmt(o.witness->lhs_shape.extents()) + " vs " +
             fmt(o.witness->rhs_shape.extents());
    } else if (o.shape_mismatch) {
      note = "shapes " + fmt(o.shape_mismatch->lhs_shape.extents()) + " vs " + fmt(o.shape_mismatch->rhs_shape.extents());
    }
    if (o.count_not_constructible > 0) {
      note = "lenient action " + std::to_string(o.count_not_constructible - o.count_failed) + "/" +
             std::to_string(o.count_not_constructible) + ", exact shape " + std::to_string(o.count_lenient_shape_exact);
      if (o.count_pairwise_lenient_action) note += ", pairwise " + std::to_string(*o.count_pairwise_lenient_action);
    }
    std::snprintf(line, sizeof line, "%-15s %-27s %5zu %6zu %6zu %6zu %7zu  ", o.law_id.c_str(),
                  std::string(to_string(o.classification)).c_str(), o.instances_run, o.count_strict,
                  o.count_action_only, o.count_failed, o.count_not_constructible);
    os << line << note << "\n";
  }
  return os.str();
}

}  // namespace moore::lab
