#include "moore/cube_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "moore/compose.hpp"
#include "moore/error.hpp"
#include "moore/ops.hpp"
#include "moore/tensor.hpp"

namespace moore {

using nlohmann::ordered_json;

namespace {

ordered_json space_json(const Space& s) {
  if (s.is_product()) return {{"kind", "product"}, {"left", space_json(s.left())}, {"right", space_json(s.right())}};
  return {{"kind", "euclidean"}, {"dim", s.dim()}};
}

template <class J>
const J& member(const J& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class J>
std::size_t read_index(const J& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_integer() || v.template get<long long>() < 0) {
    throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.template get<std::size_t>();
}

template <class J>
Sign read_sign(const J& j) {
  const auto& v = member(j, "sign");
  if (v.is_string()) {
    const auto s = v.template get<std::string>();
    if (s == "-" || s == "minus") return Sign::minus;
    if (s == "+" || s == "plus") return Sign::plus;
  }
  throw FormatError("field 'sign' must be \"-\" or \"+\"");
}

template <class J>
Space read_space(const J& j) {
  const auto& kind = member(j, "kind");
  if (!kind.is_string()) throw FormatError("target kind must be a string");
  const auto k = kind.template get<std::string>();
  if (k == "euclidean") {
    const std::size_t d = read_index(j, "dim");
    if (d == 0) throw FormatError("euclidean target needs dim >= 1");
    return Space::euclidean(d);
  }
  if (k == "product") return Space::product(read_space(member(j, "left")), read_space(member(j, "right")));
  throw FormatError("unknown target kind '" + k + "'");
}

template <class J>
Shape read_shape(const J& j) {
  const auto& v = member(j, "shape");
  if (!v.is_array()) throw FormatError("shape must be an array");
  std::vector<double> extents;
  for (const auto& e : v) {
    if (!e.is_number()) throw FormatError("shape entries must be numbers");
    extents.push_back(e.template get<double>());
  }
  return Shape(std::move(extents));
}

ordered_json node_json(const MooreCube& c);

ordered_json primitive_json(const MooreCube& c, const Primitive& p) {
  if (p.exprs.empty()) {
    throw FormatError("cannot serialize native action" + (p.label.empty() ? std::string() : " '" + p.label + "'"));
  }
  ordered_json j;
  j["dim"] = c.dim();
  j["shape"] = c.shape().values();
  j["target"] = space_json(c.space());
  auto exprs = ordered_json::array();
  for (const auto& e : p.exprs) exprs.push_back(e.to_string());
  j["expr"] = std::move(exprs);
  return j;
}

ordered_json node_json(const MooreCube& c) {
  return std::visit(
      [&c](const auto& how) -> ordered_json {
        using T = std::decay_t<decltype(how)>;
        ordered_json j;
        if constexpr (std::is_same_v<T, Primitive>) {
          j = {{"op", "primitive"}};
          j.update(primitive_json(c, how));
        } else if constexpr (std::is_same_v<T, FaceOf>) {
          j = {{"op", "face"}, {"index", how.index}, {"sign", std::string(1, sign_char(how.sign))}, {"of", node_json(*how.of)}};
        } else if constexpr (std::is_same_v<T, DegeneracyOf>) {
          j = {{"op", "degeneracy"}, {"index", how.index}, {"of", node_json(*how.of)}};
        } else if constexpr (std::is_same_v<T, ConnectionOf>) {
          j = {{"op", "connection"}, {"index", how.index}, {"sign", std::string(1, sign_char(how.sign))}, {"of", node_json(*how.of)}};
        } else if constexpr (std::is_same_v<T, ReverseOf>) {
          j = {{"op", "reverse"}, {"index", how.index}, {"of", node_json(*how.of)}};
        } else if constexpr (std::is_same_v<T, ComposeOf>) {
          j = {{"op", "compose"},
               {"direction", how.direction},
               {"mode", how.lenient ? "lenient" : "strict"},
               {"left", node_json(*how.left)},
               {"right", node_json(*how.right)}};
        } else if constexpr (std::is_same_v<T, GridOf>) {
          auto cells = ordered_json::array();
          for (const auto& cell : how.cells) cells.push_back(node_json(*cell));
          j = {{"op", "grid"}, {"counts", how.counts}, {"cells", std::move(cells)}};
        } else if constexpr (std::is_same_v<T, TensorOf>) {
          j = {{"op", "tensor"}, {"left", node_json(*how.left)}, {"right", node_json(*how.right)}};
        } else {
          j = {{"op", "respace"}, {"target", space_json(c.space())}, {"of", node_json(*how.of)}};
        }
        return j;
      },
      c.construction());
}

template <class J>
MooreCube read_primitive(const J& j) {
  const std::size_t dim = read_index(j, "dim");
  Shape shape = read_shape(j);
  if (shape.size() != dim) throw FormatError("shape length " + std::to_string(shape.size()) + " differs from dim " + std::to_string(dim));
  Space space = read_space(member(j, "target"));
  const auto& ex = member(j, "expr");
  if (!ex.is_array()) throw FormatError("expr must be an array of strings");
  if (ex.size() != space.dim()) {
    throw FormatError("expr has " + std::to_string(ex.size()) + " entries, target dimension is " + std::to_string(space.dim()));
  }
  std::vector<Expr> exprs;
  for (const auto& e : ex) {
    if (!e.is_string()) throw FormatError("expr entries must be strings");
    exprs.push_back(parse_expr(e.template get<std::string>()));
  }
  for (const auto& e : exprs) {
    if (e.max_variable() > dim) {
      throw FormatError("expression '" + e.to_string() + "' uses t" + std::to_string(e.max_variable()) + " in a " +
                        std::to_string(dim) + "-cube");
    }
  }
  return make_expr_cube(dim, std::move(shape), std::move(space), std::move(exprs));
}

template <class J>
MooreCube read_node(const J& j, const EqualityOracle& oracle) {
  const auto& opv = member(j, "op");
  if (!opv.is_string()) throw FormatError("provenance op must be a string");
  const auto op = opv.template get<std::string>();
  if (op == "primitive") return read_primitive(j);
  if (op == "face") return face(read_node(member(j, "of"), oracle), read_index(j, "index"), read_sign(j));
  if (op == "degeneracy") return degeneracy(read_node(member(j, "of"), oracle), read_index(j, "index"));
  if (op == "connection") return connection(read_node(member(j, "of"), oracle), read_index(j, "index"), read_sign(j));
  if (op == "reverse") return reverse(read_node(member(j, "of"), oracle), read_index(j, "index"));
  if (op == "compose") {
    const auto& mode = member(j, "mode");
    const MooreCube a = read_node(member(j, "left"), oracle);
    const MooreCube b = read_node(member(j, "right"), oracle);
    const std::size_t d = read_index(j, "direction");
    if (mode == "strict") return compose_strict(a, b, d, oracle);
    if (mode == "lenient") return compose_lenient(a, b, d, oracle);
    throw FormatError("compose mode must be \"strict\" or \"lenient\"");
  }
  if (op == "grid") {
    const auto& counts_j = member(j, "counts");
    const auto& cells_j = member(j, "cells");
    if (!counts_j.is_array() || !cells_j.is_array()) throw FormatError("grid needs counts and cells arrays");
    std::vector<std::size_t> counts;
    for (const auto& n : counts_j) {
      if (!n.is_number_integer() || n.template get<long long>() < 1) throw FormatError("grid counts must be positive integers");
      counts.push_back(n.template get<std::size_t>());
    }
    std::vector<MooreCube> cells;
    for (const auto& cell : cells_j) cells.push_back(read_node(cell, oracle));
    return multi_compose_lenient(CubeGrid(std::move(counts), std::move(cells)), oracle);
  }
  if (op == "tensor") return tensor(read_node(member(j, "left"), oracle), read_node(member(j, "right"), oracle));
  if (op == "respace") return respace(read_node(member(j, "of"), oracle), read_space(member(j, "target")));
  throw FormatError("unknown provenance op '" + op + "'");
}

}  // namespace

std::string cube_to_json(const MooreCube& c, int indent) {
  ordered_json j;
  if (const auto* p = std::get_if<Primitive>(&c.construction())) {
    j = primitive_json(c, *p);
  } else {
    j["dim"] = c.dim();
    j["shape"] = c.shape().values();
    j["target"] = space_json(c.space());
    j["provenance"] = node_json(c);
  }
  return j.dump(indent) + "\n";
}

MooreCube cube_from_json(std::string_view text, const EqualityOracle& oracle) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw FormatError("cube file must be a JSON object");
    if (!j.contains("provenance")) return read_primitive(j);
    const std::size_t dim = read_index(j, "dim");
    const Shape shape = read_shape(j);
    const Space space = read_space(member(j, "target"));
    MooreCube c = read_node(member(j, "provenance"), oracle);
    if (c.dim() != dim) throw FormatError("provenance yields dim " + std::to_string(c.dim()) + ", file says " + std::to_string(dim));
    if (c.space() != space) throw FormatError("provenance yields target " + c.space().to_string() + ", file says " + space.to_string());
    if (!shapes_close(c.shape(), shape, oracle.tol_shape)) {
      throw FormatError("provenance yields shape " + c.shape().to_string() + ", file says " + shape.to_string());
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed cube file: ") + e.what());
  }
}

void save_cube(const MooreCube& c, const std::filesystem::path& path) {
  const std::string text = cube_to_json(c);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("failed writing " + path.string());
}

MooreCube load_cube(const std::filesystem::path& path, const EqualityOracle& oracle) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return cube_from_json(ss.str(), oracle);
}

std::string space_to_json(const Space& s) { return space_json(s).dump(); }

Space space_from_json(std::string_view text) {
  try {
    return read_space(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed target: ") + e.what());
  }
}

}  // namespace moore
