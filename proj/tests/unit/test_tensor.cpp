#include <doctest.h>

#include "support.hpp"

using namespace moore;
using test::cube;

TEST_CASE("tensor shape and action") {
  const MooreCube a = cube({2.0}, {"7"});
  const MooreCube b = cube({3.0, 1.0}, {"0"});
  const MooreCube ab = tensor(a, b);
  CHECK(ab.dim() == 3);
  CHECK(ab.shape() == Shape{2.0, 3.0, 1.0});
  CHECK(ab.space() == Space::product(Space::euclidean(1), Space::euclidean(1)));

  const MooreCube t = tensor(cube({2.0}, {"t1^2"}), cube({3.0}, {"t1 + 1"}));
  CHECK(t.eval({1.0, 2.0}) == Point{1.0, 3.0});
  CHECK(t.eval({5.0, 5.0}) == Point{4.0, 4.0});
}

TEST_CASE("tensor with a point cube") {
  const MooreCube a = cube({2.0}, {"t1"});
  const MooreCube ay = tensor(a, point_cube({9.0, 8.0}, Space::euclidean(2)));
  CHECK(ay.shape() == a.shape());
  CHECK(ay.eval({1.5}) == Point{1.5, 9.0, 8.0});
}

TEST_CASE("respace and canonical") {
  const MooreCube a = cube({1.0}, {"t1"});
  const MooreCube b = cube({1.0}, {"2*t1"}, Space::euclidean(1));
  const MooreCube c = cube({}, {"3", "4"}, Space::euclidean(2));
  const MooreCube left = tensor(tensor(a, b), c);
  const MooreCube right = tensor(a, tensor(b, c));
  CHECK_FALSE(equals_strict(left, right));
  CHECK(equals_strict(canonical(left), canonical(right)));
  CHECK_THROWS_AS(respace(a, Space::euclidean(2)), DimensionMismatch);
}

TEST_CASE("faces, degeneracies and connections commute with tensor") {
  const EqualityOracle o;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    lab::Rng rng(seed);
    const std::size_t m = rng.index(1, 2);
    const std::size_t n = rng.index(1, 2);
    const MooreCube a = lab::gen_cube(rng, m, Space::euclidean(rng.index(1, 2)));
    const MooreCube b = lab::gen_cube(rng, n, Space::euclidean(rng.index(1, 2)));
    const MooreCube ab = tensor(a, b);
    for (std::size_t i = 1; i <= m + n; ++i) {
      for (Sign s : {Sign::minus, Sign::plus}) {
        const MooreCube rhs = i <= m ? tensor(face(a, i, s), b) : tensor(a, face(b, i - m, s));
        CHECK(equals_strict(face(ab, i, s), rhs, o));
        const MooreCube crhs = i <= m ? tensor(connection(a, i, s), b) : tensor(a, connection(b, i - m, s));
        CHECK(equals_strict(connection(ab, i, s), crhs, o));
      }
    }
    for (std::size_t i = 1; i <= m + n + 1; ++i) {
      const MooreCube rhs = i <= m + 1 ? tensor(degeneracy(a, i), b) : tensor(a, degeneracy(b, i - m));
      CHECK(equals_strict(degeneracy(ab, i), rhs, o));
    }
    CHECK(equals_strict(degeneracy(ab, m + 1), tensor(a, degeneracy(b, 1)), o));
  }
}
