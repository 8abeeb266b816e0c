#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "moore/moore.hpp"

namespace py = pybind11;
using namespace moore;

namespace {

Sign parse_sign(const std::string& s) {
  if (s == "-" || s == "minus") return Sign::minus;
  if (s == "+" || s == "plus") return Sign::plus;
  throw py::value_error("sign must be '-' or '+', got '" + s + "'");
}

MooreCube from_exprs(const std::vector<double>& shape, const std::vector<std::string>& exprs,
                     const std::optional<Space>& space) {
  std::vector<Expr> parsed;
  parsed.reserve(exprs.size());
  for (const auto& e : exprs) parsed.push_back(parse_expr(e));
  const Space target = space ? *space : Space::euclidean(exprs.size());
  return make_expr_cube(shape.size(), Shape(shape), target, std::move(parsed));
}

py::dict witness_dict(const Witness& w) {
  py::dict d;
  d["point"] = w.point;
  d["lhs_value"] = w.left_value;
  d["rhs_value"] = w.right_value;
  d["distance"] = w.distance;
  return d;
}

EqualityOracle make_oracle(std::size_t samples, double margin, double tol_val, double tol_shape) {
  EqualityOracle o{samples, margin, tol_val, tol_shape};
  o.validate();
  return o;
}

}  // namespace

PYBIND11_MODULE(_moore, m) {
  m.doc() = "Moore cubes: shaped cubes with clamped actions";

  struct Types {
    PyObject* error;
    PyObject* invalid_shape;
    PyObject* dimension_mismatch;
    PyObject* bad_index;
    PyObject* unknown_law;
    PyObject* format_error;
    PyObject* composition_undefined;
    PyObject* parse_error;
    PyObject* eval_error;
  };
  static Types types;
  types.error = py::exception<Error>(m, "MooreError").release().ptr();
  types.invalid_shape = py::exception<InvalidShape>(m, "InvalidShape", types.error).release().ptr();
  types.dimension_mismatch = py::exception<DimensionMismatch>(m, "DimensionMismatch", types.error).release().ptr();
  types.bad_index = py::exception<BadIndex>(m, "BadIndex", types.error).release().ptr();
  types.unknown_law = py::exception<UnknownLaw>(m, "UnknownLaw", types.error).release().ptr();
  types.format_error = py::exception<FormatError>(m, "FormatError", types.error).release().ptr();
  types.composition_undefined =
      py::exception<CompositionUndefined>(m, "CompositionUndefined", types.error).release().ptr();
  types.parse_error = py::exception<ParseError>(m, "ParseError", types.error).release().ptr();
  types.eval_error = py::exception<EvalError>(m, "EvalError", types.error).release().ptr();

  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](PyObject* type, const char* what, const py::dict& attrs) {
      py::object exc = py::reinterpret_borrow<py::object>(type)(what);
      for (auto item : attrs) exc.attr(item.first) = item.second;
      PyErr_SetObject(type, exc.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CompositionUndefined& e) {
      const auto& d = e.details();
      py::dict attrs;
      attrs["reason"] = d.reason == CompositionUndefined::Reason::shape ? "shape" : "action";
      attrs["direction"] = d.direction;
      attrs["left_extents"] = d.left_extents;
      attrs["right_extents"] = d.right_extents;
      attrs["witness_point"] = d.witness_point;
      attrs["grid_position"] = d.grid_position ? py::cast(*d.grid_position) : py::none();
      raise(types.composition_undefined, e.what(), attrs);
    } catch (const ParseError& e) {
      py::dict attrs;
      attrs["offset"] = e.offset();
      attrs["expected"] = e.expected();
      raise(types.parse_error, e.what(), attrs);
    } catch (const EvalError& e) {
      py::dict attrs;
      attrs["begin"] = e.begin();
      attrs["end"] = e.end();
      raise(types.eval_error, e.what(), attrs);
    } catch (const InvalidShape& e) {
      PyErr_SetString(types.invalid_shape, e.what());
    } catch (const DimensionMismatch& e) {
      PyErr_SetString(types.dimension_mismatch, e.what());
    } catch (const BadIndex& e) {
      PyErr_SetString(types.bad_index, e.what());
    } catch (const UnknownLaw& e) {
      PyErr_SetString(types.unknown_law, e.what());
    } catch (const FormatError& e) {
      PyErr_SetString(types.format_error, e.what());
    } catch (const Error& e) {
      PyErr_SetString(types.error, e.what());
    }
  });

  py::class_<Space>(m, "Space")
      .def_static("euclidean", &Space::euclidean, py::arg("d"))
      .def_static("product", &Space::product, py::arg("left"), py::arg("right"))
      .def_property_readonly("dim", &Space::dim)
      .def_property_readonly("is_product", &Space::is_product)
      .def("flattened", &Space::flattened)
      .def("distance", [](const Space& s, const std::vector<double>& a,
                          const std::vector<double>& b) { return s.distance(a, b); })
      .def("__eq__", [](const Space& a, const Space& b) { return a == b; })
      .def("__repr__", &Space::to_string);

  py::class_<EqualityOracle>(m, "Oracle")
      .def(py::init(&make_oracle), py::arg("samples_per_axis") = 5, py::arg("beyond_margin") = 1.0,
           py::arg("tol_val") = 1e-9, py::arg("tol_shape") = 1e-9)
      .def_readonly("samples_per_axis", &EqualityOracle::samples_per_axis)
      .def_readonly("beyond_margin", &EqualityOracle::beyond_margin)
      .def_readonly("tol_val", &EqualityOracle::tol_val)
      .def_readonly("tol_shape", &EqualityOracle::tol_shape)
      .def("axes", [](const EqualityOracle& o, const std::vector<double>& shape) { return o.axes(Shape(shape)); });

  py::class_<MooreCube>(m, "Cube")
      .def_property_readonly("dim", &MooreCube::dim)
      .def_property_readonly("shape", [](const MooreCube& c) { return c.shape().values(); })
      .def_property_readonly("space", &MooreCube::space)
      .def("__call__", [](const MooreCube& c, const std::vector<double>& t) { return c.eval(t); }, py::arg("t"))
      .def("to_json", &cube_to_json, py::arg("indent") = 2)
      .def("__repr__", [](const MooreCube& c) {
        return "<Cube dim=" + std::to_string(c.dim()) + " shape=" + c.shape().to_string() + " target=" +
               c.space().to_string() + ">";
      });

  m.def("cube", &from_exprs, py::arg("shape"), py::arg("exprs"), py::arg("space") = std::nullopt,
        "Cube whose action is given by one DSL expression per target coordinate.");
  m.def("point", [](const std::vector<double>& x, const std::optional<Space>& space) {
    return point_cube(x, space ? *space : Space::euclidean(x.size()));
  }, py::arg("x"), py::arg("space") = std::nullopt);

  m.def("face", [](const MooreCube& c, std::size_t i, const std::string& s) { return face(c, i, parse_sign(s)); },
        py::arg("c"), py::arg("i"), py::arg("sign"));
  m.def("degeneracy", &degeneracy, py::arg("c"), py::arg("i"));
  m.def("connection",
        [](const MooreCube& c, std::size_t i, const std::string& s) { return connection(c, i, parse_sign(s)); },
        py::arg("c"), py::arg("i"), py::arg("sign"));
  m.def("reverse", &reverse, py::arg("c"), py::arg("i"));

  const EqualityOracle defaults;
  m.def("compose", &compose_strict, py::arg("a"), py::arg("b"), py::arg("j"), py::arg("oracle") = defaults);
  m.def("compose_lenient", &compose_lenient, py::arg("a"), py::arg("b"), py::arg("j"),
        py::arg("oracle") = defaults);
  m.def("compose_grid",
        [](const std::vector<std::size_t>& counts, const std::vector<MooreCube>& cells, bool lenient,
           const EqualityOracle& o) {
          const CubeGrid g(counts, cells);
          return lenient ? multi_compose_lenient(g, o) : multi_compose(g, o);
        },
        py::arg("counts"), py::arg("cells"), py::arg("lenient") = false, py::arg("oracle") = defaults,
        "Composite of a grid of cells stored last axis fastest.");
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def("canonical", &canonical, py::arg("c"));

  m.def("equals_strict", &equals_strict, py::arg("a"), py::arg("b"), py::arg("oracle") = defaults);
  m.def("equals_action", &equals_action, py::arg("a"), py::arg("b"), py::arg("oracle") = defaults);
  m.def("compare_action", [](const MooreCube& a, const MooreCube& b, const EqualityOracle& o) -> py::object {
    const Comparison c = compare_action(a, b, o);
    if (c.equal) return py::none();
    if (!c.witness) return py::dict();
    return witness_dict(*c.witness);
  }, py::arg("a"), py::arg("b"), py::arg("oracle") = defaults,
        "None when equal as actions, else the witness of maximal distance.");

  m.def("parse_expr", [](const std::string& text) { return parse_expr(text).to_string(); }, py::arg("text"),
        "Canonical printed form of a parsed expression.");
  m.def("eval_expr",
        [](const std::string& text, const std::vector<double>& env) { return eval_expr(parse_expr(text), env); },
        py::arg("text"), py::arg("env") = std::vector<double>{});

  m.def("from_json", [](const std::string& text, const EqualityOracle& o) { return cube_from_json(text, o); },
        py::arg("text"), py::arg("oracle") = defaults);
  m.def("save", &save_cube, py::arg("c"), py::arg("path"));
  m.def("load", &load_cube, py::arg("path"), py::arg("oracle") = defaults);
  m.def("render_svg", [](const MooreCube& c, double size, double margin, int levels) {
    return render_svg(c, SvgOptions{size, margin, levels});
  }, py::arg("c"), py::arg("size") = 400.0, py::arg("margin") = 30.0, py::arg("levels") = 4);

  m.def("law_ids", &lab::law_ids);
  m.def("check_law", [](const std::string& id, std::size_t instances, std::uint64_t seed, const EqualityOracle& o) -> py::object {
    lab::LawReport r;
    r.config.seed = seed;
    r.config.instances = instances;
    r.config.oracle = o;
    r.outcomes.push_back(lab::check_law(id, instances, seed, o));
    py::object doc = py::module_::import("json").attr("loads")(lab::report_json(r));
    return doc["laws"][py::int_(0)];
  }, py::arg("law_id"), py::arg("instances") = 100, py::arg("seed") = 42, py::arg("oracle") = defaults,
        "Outcome of one law as a report dictionary.");
  m.def("run_suite", [](std::uint64_t seed, std::size_t instances, const EqualityOracle& o) {
    lab::SuiteConfig config;
    config.seed = seed;
    config.instances = instances;
    config.oracle = o;
    lab::LawReport report;
    {
      py::gil_scoped_release release;
      report = lab::run_suite(config);
    }
    return lab::report_json(report);
  }, py::arg("seed") = 42, py::arg("instances") = 100, py::arg("oracle") = defaults,
        "JSON report of the whole law suite.");
}
