// Acceptance run: one PASS/FAIL line per criterion. Usage:
//   acceptance [path/to/moore [work-dir]]
// Without the CLI path the end-to-end criterion is reported as FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "moore/moore.hpp"

using namespace moore;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool ok, const std::string& id, const std::string& what) {
  std::printf("%s %-10s %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

EqualityOracle suite_oracle() {
  EqualityOracle o;
  o.samples_per_axis = 5;
  o.tol_val = 1e-9;
  o.tol_shape = 1e-9;
  return o;
}

constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kInstances = 100;

std::vector<double> exprs_shape_perturbed(const Shape& s, std::size_t slot, double eps) {
  std::vector<double> v = s.values();
  v[slot - 1] += eps;
  return v;
}

MooreCube with_shape(const MooreCube& c, std::vector<double> extents) {
  const auto& p = std::get<Primitive>(c.construction());
  return make_expr_cube(c.dim(), Shape(std::move(extents)), c.space(), p.exprs);
}

void criterion1() {
  const std::vector<std::string> ids = {"3.1.i",      "3.1.ii",         "3.1.iii.lt",   "3.1.iii.gt",   "3.1.iii.eq",
                                        "3.2.i",      "3.2.ii",         "3.2.iii",      "3.2.iv",       "3.2.v",
                                        "3.2.vi",     "3.3.bounds",     "3.3.other",    "3.4",          "3.5",
                                        "3.6.i",      "assoc",          "ident.left",   "ident.right",  "rev.involution",
                                        "rev.faces",  "rev.antihom",    "tensor.shape", "tensor.faces", "tensor.assoc"};
  for (const auto& id : ids) {
    const auto o = lab::check_law(id, kInstances, kSeed, suite_oracle());
    const bool ok = o.classification == lab::Classification::holds_strict && o.count_strict == o.instances_run &&
                    o.instances_run == kInstances;
    report(ok, "1." + id, std::string(lab::to_string(o.classification)) + ", strict " + frac(o.count_strict, o.instances_run));
  }
}

void criterion2() {
  const std::string id = "3.2.vii";
  const EqualityOracle oracle = suite_oracle();
  const auto outcome = lab::check_law(id, kInstances, kSeed, oracle);
  std::size_t positive = 0, strict_fails_on_positive = 0, action = 0, mismatch_reported = 0;
  for (std::size_t k = 0; k < kInstances; ++k) {
    const auto inst = lab::make_instance(id, lab::instance_seed(kSeed, id, k));
    const std::size_t j = inst.indices[0];
    const double rj = inst.cubes[0].shape().extent(j);
    bool all_action = true, all_strict_fail = true, shapes_as_claimed = true;
    for (const auto& eq : lab::law_sides(id, inst, oracle)) {
      all_action = all_action && equals_action(eq.lhs, eq.rhs, oracle);
      all_strict_fail = all_strict_fail && !equals_strict(eq.lhs, eq.rhs, oracle);
      shapes_as_claimed = shapes_as_claimed && eq.lhs.shape().extent(j) == rj && eq.rhs.shape().extent(j) == 0.0;
    }
    if (all_action) ++action;
    if (shapes_as_claimed) ++mismatch_reported;
    if (rj > 0) {
      ++positive;
      if (all_strict_fail) ++strict_fails_on_positive;
    }
  }
  report(outcome.classification == lab::Classification::holds_action && outcome.shape_mismatch.has_value(), "2.class",
         "3.2.vii " + std::string(lab::to_string(outcome.classification)) +
             (outcome.shape_mismatch ? ", shape mismatch " + outcome.shape_mismatch->lhs_shape.to_string() + " vs " +
                                           outcome.shape_mismatch->rhs_shape.to_string()
                                     : std::string()));
  report(strict_fails_on_positive == positive && positive > 0, "2.strict",
         "strict fails on every instance with r_j > 0: " + frac(strict_fails_on_positive, positive));
  report(action == kInstances, "2.action", "action-level equality " + frac(action, kInstances));
  report(mismatch_reported == kInstances, "2.shapes", "pivot extent r_j vs 0 on " + frac(mismatch_reported, kInstances));
}

void criterion3() {
  const EqualityOracle oracle = suite_oracle();
  for (const std::string id : {"3.6.ii", "3.6.iii"}) {
    const auto outcome = lab::check_law(id, kInstances, kSeed, oracle);
    std::size_t both_positive = 0, rejected = 0, action = 0, exact = 0;
    for (std::size_t k = 0; k < kInstances; ++k) {
      const auto inst = lab::make_instance(id, lab::instance_seed(kSeed, id, k));
      const std::size_t j = inst.indices[0];
      const bool positive = inst.cubes[0].shape().extent(j) > 0 && inst.cubes[1].shape().extent(j) > 0;
      if (positive) {
        ++both_positive;
        try {
          lab::law_sides(id, inst, oracle, false);
        } catch (const CompositionUndefined&) {
          ++rejected;
        }
      }
      const auto sides = lab::law_sides(id, inst, oracle, true);
      const auto& eq = sides.front();
      if (equals_action(eq.lhs, eq.rhs, oracle)) ++action;
      if (shapes_close(eq.lhs.shape(), eq.rhs.shape(), 0.0)) ++exact;
    }
    const std::string tag = "3." + id.substr(4);
    report(outcome.classification == lab::Classification::not_constructible_strictly, tag + ".class",
           id + " " + std::string(lab::to_string(outcome.classification)) + ", not constructible " +
               frac(outcome.count_not_constructible, outcome.instances_run));
    report(rejected == both_positive && both_positive > 0, tag + ".reject",
           "compose_strict rejects the 2x2 composite when both extents are positive: " + frac(rejected, both_positive));
    report(action == kInstances, tag + ".action", "lenient rebuild equals LHS as action " + frac(action, kInstances));
    report(exact == kInstances, tag + ".shape", "total shape equals LHS exactly " + frac(exact, kInstances));
  }
}

std::string fmt(std::span<const double> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ')';
  return os.str();
}

void criterion4() {
  const EqualityOracle oracle = suite_oracle();
  lab::LawInstance x;
  x.cubes.push_back(make_expr_cube(1, Shape{1.0}, Space::euclidean(1), {parse_expr("t1")}));
  x.indices = {1};
  for (const std::string id : {"2.7.first", "2.7.second"}) {
    const auto outcome = lab::check_law(id, kInstances, kSeed, oracle);
    report(outcome.classification == lab::Classification::fails && outcome.witness.has_value(), "4." + id.substr(4),
           id + " " + std::string(lab::to_string(outcome.classification)) + ", failed " +
               frac(outcome.count_failed, outcome.instances_run));
  }
  const auto r = lab::evaluate_instance("2.7.first", x, oracle);
  bool ok = r.status == lab::InstanceStatus::failed && r.witness.has_value();
  std::string what = "x = (t, (1)): ";
  if (ok) {
    const auto& w = *r.witness;
    ok = w.witness.point == std::vector<double>{1.0, 0.0} && w.witness.left_value == Point{0.0} &&
         w.witness.right_value == Point{1.0} && w.lhs_shape == Shape{2.0, 1.0} && w.rhs_shape == Shape{1.0, 0.0};
    what += "witness " + fmt(w.witness.point) + " LHS " + fmt(w.witness.left_value) + " RHS " +
            fmt(w.witness.right_value) + ", shapes " + w.lhs_shape.to_string() + " vs " + w.rhs_shape.to_string();
  }
  const auto suite = lab::check_law("2.7.first", kInstances, kSeed, oracle);
  ok = ok && suite.witness && suite.witness->witness.point == std::vector<double>{1.0, 0.0};
  report(ok, "4.witness", what);
}

void criterion5() {
  EqualityOracle exact = suite_oracle();
  exact.tol_shape = 0.0;
  exact.tol_val = 0.0;
  std::size_t right = 0, left = 0;
  lab::Rng rng(kSeed);
  for (int k = 0; k < 1000; ++k) {
    const MooreCube a = lab::gen_cube(rng, 1, Space::euclidean(rng.index(1, 2)));
    if (equals_strict(compose_strict(a, degeneracy(face(a, 1, Sign::plus), 1), 1, exact), a, exact)) ++right;
    if (equals_strict(compose_strict(degeneracy(face(a, 1, Sign::minus), 1), a, 1, exact), a, exact)) ++left;
  }
  report(right == 1000 && left == 1000, "5",
         "identities with zero tolerances: a.eps " + frac(right, 1000) + ", eps.a " + frac(left, 1000));
}

void criterion6() {
  const EqualityOracle oracle = suite_oracle();
  std::size_t rejected = 0, accepted = 0;
  lab::Rng pick(kSeed);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = pick.index(2, 3);
    const std::size_t j = pick.index(1, dim);
    std::size_t side = pick.index(1, dim - 1);
    if (side >= j) ++side;
    const auto [a, b] = lab::gen_composable_pair(pick.next(), dim, j);
    try {
      compose_strict(a, with_shape(b, exprs_shape_perturbed(b.shape(), side, 1e-3)), j, oracle);
    } catch (const CompositionUndefined&) {
      ++rejected;
    }
    try {
      compose_strict(a, with_shape(b, exprs_shape_perturbed(b.shape(), side, 1e-12)), j, oracle);
      ++accepted;
    } catch (const CompositionUndefined&) {
    }
  }
  report(rejected == 1000, "6.reject", "perturbation 1e-3 rejected " + frac(rejected, 1000));
  report(accepted == 1000, "6.accept", "perturbation 1e-12 accepted " + frac(accepted, 1000));
}

void criterion7() {
  const EqualityOracle oracle = suite_oracle();
  std::size_t agree = 0;
  lab::Rng rng(kSeed);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng.index(2, 3);
    const std::size_t i = rng.index(1, n);
    std::size_t j = rng.index(1, n - 1);
    if (j >= i) ++j;
    const auto [a, b, c, d] = lab::gen_composable_square(rng, n, i, j, Space::euclidean(rng.index(1, 2)));
    const CubeGrid g = CubeGrid::square(i, j, a, b, c, d);
    std::vector<std::size_t> order_a(n), order_b(n);
    for (std::size_t m = 0; m < n; ++m) order_a[m] = order_b[m] = m + 1;
    std::reverse(order_b.begin(), order_b.end());
    if (equals_strict(multi_compose(g, oracle, order_a), multi_compose(g, oracle, order_b), oracle)) ++agree;
  }
  report(agree == 100, "7", "2x2 grids, both fold orders strictly equal " + frac(agree, 100));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion8(const std::string& cli, const fs::path& work) {
  if (cli.empty()) {
    report(false, "8.sample", "no CLI path given");
    report(false, "8.determinism", "no CLI path given");
    return;
  }
  fs::create_directories(work);
  const MooreCube a = make_expr_cube(1, Shape{2.0}, Space::euclidean(1), {parse_expr("t1^2")});
  const MooreCube b = make_expr_cube(1, Shape{3.0}, Space::euclidean(1), {parse_expr("4 + t1")});
  save_cube(a, work / "a.json");
  save_cube(b, work / "b.json");
  const auto q = [&](const char* name) { return "\"" + (work / name).string() + "\""; };
  const fs::path log = work / "log.txt";

  bool ok = run(cli, "compose " + q("a.json") + " " + q("b.json") + " --dir 1 --out " + q("ab.json"), log) == 0 &&
            run(cli, "sample --in " + q("ab.json") + " --grid 10 --out " + q("ab.csv"), log) == 0;
  std::size_t rows = 0, matched = 0;
  double worst = 0.0;
  if (ok) {
    const MooreCube ab = compose_strict(a, b, 1);
    EqualityOracle g;
    g.samples_per_axis = 10;
    const auto grid = oracle_grid(ab.shape(), g);
    std::istringstream csv(slurp(work / "ab.csv"));
    std::string line;
    std::getline(csv, line);
    ok = line == "t1,x1\r";
    while (std::getline(csv, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto comma = line.find(',');
      const double t = std::strtod(line.substr(0, comma).c_str(), nullptr);
      const double v = std::strtod(line.substr(comma + 1).c_str(), nullptr);
      const double direct = ab.eval({t})[0];
      const double err = std::fabs(direct - v);
      worst = std::max(worst, err);
      if (rows < grid.size() && std::fabs(grid[rows][0] - t) <= 1e-12 && err <= 1e-12) ++matched;
      ++rows;
    }
    ok = ok && rows == grid.size() && matched == rows && ab.shape() == load_cube(work / "ab.json").shape();
  }
  std::ostringstream what;
  what << "compose (2)+(3), sample grid 10: " << frac(matched, rows) << " rows within 1e-12 (max error " << worst << ")";
  report(ok, "8.sample", what.str());

  const bool ran = run(cli, "check-laws --seed 42 --report " + q("r1.json"), work / "t1.txt") == 0 &&
                   run(cli, "check-laws --seed 42 --report " + q("r2.json"), work / "t2.txt") == 0;
  const std::string r1 = slurp(work / "r1.json");
  const std::string r2 = slurp(work / "r2.json");
  const std::string t1 = slurp(work / "t1.txt");
  report(ran && !r1.empty() && r1 == r2 && t1 == slurp(work / "t2.txt"), "8.determinism",
         "check-laws --seed 42 twice: reports " + std::string(r1 == r2 ? "byte-identical" : "differ") + " (" +
             std::to_string(r1.size()) + " bytes)");
}

struct DslCase {
  const char* text;
  std::vector<double> env;
  double expected;
};

void criterion9() {
  const std::vector<DslCase> cases = {
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
  std::size_t exact = 0;
  for (const auto& c : cases) {
    try {
      if (eval_expr(parse_expr(c.text), c.env) == c.expected) ++exact;
    } catch (const Error&) {
    }
  }
  report(exact == cases.size(), "9.vector", "regression vector exact " + frac(exact, cases.size()));

  const std::vector<std::pair<const char*, std::size_t>> bad = {
      {"(t1", 3}, {"2+", 2}, {"t1 +* t2", 4}, {"foo(1)", 0}, {"", 0}, {"1 2", 2}, {"max(1)", 5}, {"t0", 0}};
  std::size_t right = 0;
  for (const auto& [text, offset] : bad) {
    try {
      parse_expr(text);
    } catch (const ParseError& e) {
      if (e.offset() == offset) ++right;
    }
  }
  report(right == bad.size(), "9.errors", "malformed inputs with correct ParseError offsets " + frac(right, bad.size()));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "moore_acceptance";
  const auto start = std::chrono::steady_clock::now();
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(cli, work);
    criterion9();
  } catch (const std::exception& e) {
    report(false, "error", e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failing, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
