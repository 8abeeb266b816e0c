#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace moore;
using test::c1;
using test::cube;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "moore_test_cli";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("primitive file format") {
  const MooreCube c = cube({2.0, 0.5}, {"t1^2", "-t2 + 1"}, Space::euclidean(2));
  const std::string text = cube_to_json(c);
  CHECK(text.find("\"expr\"") != std::string::npos);
  CHECK(text.find("provenance") == std::string::npos);
  const MooreCube back = cube_from_json(text);
  CHECK(equals_strict(back, c));
}

TEST_CASE("derived cubes round trip through provenance") {
  const EqualityOracle o;
  const MooreCube b = cube({3.0}, {"4 + t1"});
  std::vector<MooreCube> built = {
      compose_strict(c1(), b, 1),
      connection(compose_strict(c1(), b, 1), 1, Sign::minus),
      reverse(degeneracy(face(cube({1.0, 2.0}, {"t1*t2"}), 2, Sign::plus), 1), 2),
      canonical(tensor(tensor(c1(), b), point_cube({1.0, 2.0}, Space::euclidean(2)))),
      compose_lenient(degeneracy(cube({1.0}, {"3*t1"}), 2), connection(cube({2.5}, {"3 + t1"}), 1, Sign::plus), 1),
  };
  const MooreCube a = cube({1.0}, {"t1"});
  const MooreCube a2 = cube({1.0}, {"1 + t1"});
  built.push_back(multi_compose_lenient(CubeGrid::square(1, 2, connection(a, 1, Sign::minus), degeneracy(a2, 2),
                                                          degeneracy(a2, 1), connection(a2, 1, Sign::minus))));
  for (const auto& c : built) {
    const std::string text = cube_to_json(c);
    const MooreCube back = cube_from_json(text, o);
    CHECK(equals_strict(back, c, o));
    CHECK(cube_to_json(back) == text);
  }
}

TEST_CASE("file validation") {
  CHECK_THROWS_AS(cube_from_json("{"), FormatError);
  CHECK_THROWS_AS(cube_from_json("[]"), FormatError);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[1,2],"target":{"kind":"euclidean","dim":1},"expr":["t1"]})"),
                  FormatError);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[1],"target":{"kind":"euclidean","dim":2},"expr":["t1"]})"),
                  FormatError);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[1],"target":{"kind":"euclidean","dim":1},"expr":["t2"]})"),
                  FormatError);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[-1],"target":{"kind":"euclidean","dim":1},"expr":["t1"]})"),
                  InvalidShape);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[1],"target":{"kind":"sphere"},"expr":["t1"]})"), FormatError);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[1],"target":{"kind":"euclidean","dim":1},"expr":["t1 +"]})"),
                  ParseError);
  CHECK_THROWS_AS(cube_from_json(R"({"dim":1,"shape":[9],"target":{"kind":"euclidean","dim":1},
      "provenance":{"op":"reverse","index":1,"of":{"op":"primitive","dim":1,"shape":[1],
      "target":{"kind":"euclidean","dim":1},"expr":["t1"]}}})"),
                  FormatError);
  const MooreCube native = make_cube(1, Shape{1.0}, Space{}, [](std::span<const double> t) { return Point{t[0]}; });
  CHECK_THROWS_AS(cube_to_json(native), FormatError);

  const Space s = space_from_json(R"({"kind":"product","left":{"kind":"euclidean","dim":1},"right":{"kind":"euclidean","dim":2}})");
  CHECK(s.to_string() == "(R^1 x R^2)");
  CHECK(space_from_json(space_to_json(s)) == s);
}

TEST_CASE("svg rendering") {
  const MooreCube path = cube({3.0}, {"t1"});
  const std::string prim = render_svg(cube({2.0, 1.0}, {"t1"}));
  CHECK(prim.find("class=\"shape\"") != std::string::npos);
  CHECK(prim.find("class=\"seam\"") == std::string::npos);
  CHECK(prim.find("class=\"constancy\"") == std::string::npos);

  const std::string gamma = render_svg(connection(path, 1, Sign::minus));
  CHECK(gamma.find("width=\"400.000\" height=\"400.000\"") != std::string::npos);
  CHECK(gamma.find("<polyline class=\"constancy\"") != std::string::npos);

  const MooreCube a = cube({1.0}, {"t1"});
  const MooreCube b = cube({1.0}, {"1 + t1"});
  const std::string transport = render_svg(connection(compose_strict(a, b, 1), 1, Sign::plus));
  std::size_t seams = 0;
  for (std::size_t at = transport.find("class=\"seam\""); at != std::string::npos;
       at = transport.find("class=\"seam\"", at + 1)) {
    ++seams;
  }
  CHECK(seams == 2);
  CHECK(transport.find("x1=\"230.000\" y1=\"430.000\" x2=\"230.000\" y2=\"30.000\"") != std::string::npos);

  CHECK(render_svg(degeneracy(path, 1)).find("class=\"constancy\"") != std::string::npos);
  CHECK_THROWS_AS(render_svg(path), DimensionMismatch);
}

#ifdef MOORE_CLI
namespace {

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + MOORE_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli exit codes and outputs") {
  const fs::path dir = scratch();
  save_cube(c1(), dir / "a.json");
  save_cube(cube({3.0}, {"4 + t1"}), dir / "b.json");
  save_cube(cube({1.0, 1.0}, {"0"}), dir / "s11.json");
  save_cube(cube({1.0, 2.0}, {"0"}), dir / "s12.json");
  const std::string d = "\"" + dir.string() + "/";

  CHECK(run("compose " + d + "a.json\" " + d + "b.json\" --dir 1 --out " + d + "ab.json\"") == 0);
  CHECK(load_cube(dir / "ab.json").shape() == Shape{5.0});
  CHECK(run("compose " + d + "s11.json\" " + d + "s12.json\" --dir 1") == 3);
  CHECK(run("compose " + d + "a.json\" " + d + "a.json\" --dir 1") == 3);

  CHECK(run("apply --op conn:-:1 --in " + d + "a.json\" --out " + d + "sq.json\"") == 0);
  CHECK(load_cube(dir / "sq.json").shape() == Shape{2.0, 2.0});
  CHECK(run("apply --op face:-:1 --in " + d + "sq.json\" --out " + d + "back.json\"") == 0);
  CHECK(equals_strict(load_cube(dir / "back.json"), c1()));
  CHECK(run("apply --op face:+:1 --in " + d + "sq.json\" --out " + d + "const.json\"") == 0);
  CHECK(equals_action(load_cube(dir / "const.json"), degeneracy(face(c1(), 1, Sign::plus), 1)));
  CHECK(run("apply --op face:+:3 --in " + d + "a.json\"") == 2);
  CHECK(run("apply --op twist:1 --in " + d + "a.json\"") == 2);

  CHECK(run("sample --in " + d + "a.json\" --grid 5 --out " + d + "a.csv\"") == 0);
  const std::string csv = slurp(dir / "a.csv");
  CHECK(csv == "t1,x1\r\n0,0\r\n0.5,0.25\r\n1,1\r\n1.5,2.25\r\n2,4\r\n3,4\r\n");
  save_cube(point_cube({5.0}, Space{}), dir / "p.json");
  CHECK(run("sample --in " + d + "p.json\" --out " + d + "p.csv\"") == 0);
  CHECK(slurp(dir / "p.csv") == "x1\r\n5\r\n");
  CHECK(run("sample --in " + d + "missing.json\"") == 2);
  CHECK(run("sample --in " + d + "a.json\" --grid 1") == 2);

  CHECK(run("svg --in " + d + "sq.json\" --out " + d + "sq.svg\"") == 0);
  CHECK(slurp(dir / "sq.svg").find("<svg") != std::string::npos);
  CHECK(run("svg --in " + d + "a.json\"") == 2);

  CHECK(run("tensor " + d + "a.json\" " + d + "b.json\" --out " + d + "t.json\"") == 0);
  CHECK(load_cube(dir / "t.json").shape() == Shape{2.0, 3.0});

  CHECK(run("check-laws --instances 2 --seed 1 --report " + d + "r.json\"") == 0);
  CHECK(slurp(dir / "r.json").find("\"laws\"") != std::string::npos);
  CHECK(run("check-laws --grid 1") == 2);
  CHECK(run("check-laws --tol -1") == 2);
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
}
#endif
