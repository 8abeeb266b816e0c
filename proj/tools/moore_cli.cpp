// moore: command line front end for Moore cubes.
//
// Exit codes: 0 success, 2 usage or validation errors, 3 composition undefined.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "moore/moore.hpp"

namespace {

using namespace moore;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("failed writing " + path);
}

std::size_t parse_index(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw FormatError("bad index '" + s + "' in op '" + spec + "'");
  return v;
}

Sign parse_sign(const std::string& s, const std::string& spec) {
  if (s == "-" || s == "minus") return Sign::minus;
  if (s == "+" || s == "plus") return Sign::plus;
  throw FormatError("bad sign '" + s + "' in op '" + spec + "' (want - or +)");
}

MooreCube apply_op(const MooreCube& c, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 3 && parts[0] == "face") return face(c, parse_index(parts[2], spec), parse_sign(parts[1], spec));
  if (parts.size() == 3 && parts[0] == "conn") return connection(c, parse_index(parts[2], spec), parse_sign(parts[1], spec));
  if (parts.size() == 2 && parts[0] == "deg") return degeneracy(c, parse_index(parts[1], spec));
  if (parts.size() == 2 && parts[0] == "rev") return reverse(c, parse_index(parts[1], spec));
  throw FormatError("unknown op '" + spec + "' (want face:+|-:i, deg:i, conn:+|-:i or rev:i)");
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sample_csv(const MooreCube& c, const EqualityOracle& oracle) {
  std::string out;
  std::vector<std::string> header;
  for (std::size_t k = 1; k <= c.dim(); ++k) header.push_back("t" + std::to_string(k));
  for (std::size_t k = 1; k <= c.space().dim(); ++k) header.push_back("x" + std::to_string(k));
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
  out += "\r\n";
  Point value(c.space().dim());
  for_each_grid_point(oracle.axes(c.shape()), [&](std::span<const double> t) {
    c.eval_into(t, value);
    bool first = true;
    for (double v : t) {
      out += (first ? "" : ",") + g17(v);
      first = false;
    }
    for (double v : value) {
      out += (first ? "" : ",") + g17(v);
      first = false;
    }
    out += "\r\n";
  });
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + g17(v[k]);
  return s + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moore cubes: structure maps, composition, sampling, law checking and diagrams"};
  app.require_subcommand(1);

  double tol = 1e-9;
  int grid = 5;

  std::string in, out, op;
  auto* apply = app.add_subcommand("apply", "apply a structure map to a cube file");
  apply->add_option("--op", op, "face:+|-:i, deg:i, conn:+|-:i or rev:i")->required();
  apply->add_option("--in", in, "input cube file")->required();
  apply->add_option("--out", out, "output cube file (stdout when omitted)");

  std::string left, right;
  std::size_t dir = 0;
  bool lenient = false;
  auto* compose = app.add_subcommand("compose", "compose two cubes in one direction");
  compose->add_option("a", left, "left cube file")->required();
  compose->add_option("b", right, "right cube file")->required();
  compose->add_option("--dir", dir, "direction j (1-based)")->required();
  compose->add_flag("--lenient", lenient, "only require the shared faces to agree as actions");
  compose->add_option("--tol", tol, "value and shape tolerance")->check(CLI::NonNegativeNumber);
  compose->add_option("--out", out, "output cube file (stdout when omitted)");

  auto* tens = app.add_subcommand("tensor", "tensor product of two cubes");
  tens->add_option("a", left, "left cube file")->required();
  tens->add_option("b", right, "right cube file")->required();
  tens->add_option("--out", out, "output cube file (stdout when omitted)");

  auto* sample = app.add_subcommand("sample", "sample a cube on the oracle grid as CSV");
  sample->add_option("--in", in, "input cube file")->required();
  sample->add_option("--grid", grid, "samples per axis")->check(CLI::Range(2, 1000));
  sample->add_option("--out", out, "output CSV (stdout when omitted)");

  std::uint64_t seed = 42;
  std::size_t instances = 100;
  std::string report;
  bool serial = false;
  auto* check = app.add_subcommand("check-laws", "run the law suite and print the status table");
  check->add_option("--seed", seed, "suite seed");
  check->add_option("--instances", instances, "instances per law");
  check->add_option("--grid", grid, "samples per axis")->check(CLI::Range(2, 1000));
  check->add_option("--tol", tol, "value and shape tolerance")->check(CLI::NonNegativeNumber);
  check->add_option("--report", report, "write the JSON report here");
  check->add_flag("--serial", serial, "check laws one after another");

  auto* svg = app.add_subcommand("svg", "draw a 2-cube as SVG");
  svg->add_option("--in", in, "input cube file")->required();
  svg->add_option("--out", out, "output SVG (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  EqualityOracle oracle;
  oracle.tol_val = tol;
  oracle.tol_shape = tol;
  oracle.samples_per_axis = static_cast<std::size_t>(grid);

  try {
    if (*apply) {
      write_text(out, cube_to_json(apply_op(load_cube(in), op)));
    } else if (*compose) {
      const MooreCube a = load_cube(left, oracle);
      const MooreCube b = load_cube(right, oracle);
      const MooreCube c = lenient ? compose_lenient(a, b, dir, oracle) : compose_strict(a, b, dir, oracle);
      write_text(out, cube_to_json(c));
    } else if (*tens) {
      write_text(out, cube_to_json(tensor(load_cube(left), load_cube(right))));
    } else if (*sample) {
      write_text(out, sample_csv(load_cube(in), oracle));
    } else if (*check) {
      lab::SuiteConfig config;
      config.seed = seed;
      config.instances = instances;
      config.oracle = oracle;
      config.parallel = !serial;
      const lab::LawReport r = lab::run_suite(config);
      if (!report.empty()) write_text(report, lab::report_json(r));
      std::cout << lab::status_table(r);
    } else if (*svg) {
      write_text(out, render_svg(load_cube(in)));
    }
  } catch (const CompositionUndefined& e) {
    std::cerr << "moore: " << e.what() << "\n";
    const auto& d = e.details();
    if (!d.witness_point.empty()) {
      std::cerr << "  witness " << join(d.witness_point) << ": " << join(d.left_value) << " vs " << join(d.right_value)
                << " (distance " << g17(d.distance) << ")\n";
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "moore: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
