#include "moore/cube.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "moore/error.hpp"

namespace moore {

namespace {

void check_slot(std::size_t slot, std::size_t upper, const char* what) {
  if (slot < 1 || slot > upper) {
    throw BadIndex(std::string(what) + ": slot " + std::to_string(slot) + " outside 1.." + std::to_string(upper));
  }
}

}  // namespace

Shape::Shape(std::vector<double> extents) : extents_(std::move(extents)) {
  for (std::size_t k = 0; k < extents_.size(); ++k) {
    if (!(extents_[k] >= 0.0) || !std::isfinite(extents_[k])) {
      std::ostringstream os;
      os << "extent r" << (k + 1) << " = " << extents_[k] << " is not a finite non-negative real";
      throw InvalidShape(os.str());
    }
  }
}

Shape::Shape(std::initializer_list<double> extents) : Shape(std::vector<double>(extents)) {}

double Shape::extent(std::size_t i) const {
  check_slot(i, size(), "extent");
  return extents_[i - 1];
}

Shape Shape::without(std::size_t slot) const {
  check_slot(slot, size(), "remove extent");
  auto v = extents_;
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(slot - 1));
  return Shape(std::move(v));
}

Shape Shape::inserted(std::size_t slot, double value) const {
  check_slot(slot, size() + 1, "insert extent");
  auto v = extents_;
  v.insert(v.begin() + static_cast<std::ptrdiff_t>(slot - 1), value);
  return Shape(std::move(v));
}

Shape Shape::with_extent(std::size_t slot, double value) const {
  check_slot(slot, size(), "set extent");
  auto v = extents_;
  v[slot - 1] = value;
  return Shape(std::move(v));
}

Shape Shape::concat(const Shape& other) const {
  auto v = extents_;
  v.insert(v.end(), other.extents_.begin(), other.extents_.end());
  return Shape(std::move(v));
}

std::string Shape::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t k = 0; k < extents_.size(); ++k) {
    if (k) os << ", ";
    os << extents_[k];
  }
  os << ')';
  return os.str();
}

struct MooreCube::Node {
  Shape shape;
  Space space;
  Construction how;
  ClampedAction action;
};

std::size_t MooreCube::dim() const noexcept { return node_->shape.size(); }
const Shape& MooreCube::shape() const noexcept { return node_->shape; }
const Space& MooreCube::space() const noexcept { return node_->space; }
const Construction& MooreCube::construction() const noexcept { return node_->how; }

void MooreCube::eval_into(std::span<const double> t, std::span<double> out) const {
  const auto& r = node_->shape.extents();
  if (t.size() != r.size()) {
    throw DimensionMismatch("evaluation point has " + std::to_string(t.size()) + " coordinates, cube has dimension " +
                            std::to_string(r.size()));
  }
  if (out.size() != node_->space.dim()) {
    throw DimensionMismatch("output buffer does not match target space " + node_->space.to_string());
  }
  detail::Coords clamped(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) clamped[k] = std::clamp(t[k], 0.0, r[k]);
  node_->action(clamped.cspan(), out);
}

Point MooreCube::eval(std::span<const double> t) const {
  Point out(node_->space.dim());
  eval_into(t, out);
  return out;
}

MooreCube MooreCube::from_parts(Shape shape, Space space, Construction how, ClampedAction action) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->space = std::move(space);
  node->how = std::move(how);
  node->action = std::move(action);
  return MooreCube(std::move(node));
}

MooreCube make_cube(std::size_t dim, Shape shape, Space space, NativeAction action, std::string label) {
  if (shape.size() != dim) {
    throw DimensionMismatch("shape " + shape.to_string() + " has length " + std::to_string(shape.size()) +
                            ", expected dimension " + std::to_string(dim));
  }
  if (!action) throw FormatError("make_cube: empty evaluator");
  const std::size_t d = space.dim();
  ClampedAction clamped = [action = std::move(action), d](std::span<const double> t, std::span<double> out) {
    const Point p = action(t);
    if (p.size() != d) {
      throw DimensionMismatch("evaluator returned " + std::to_string(p.size()) + " coordinates, target needs " +
                              std::to_string(d));
    }
    std::copy(p.begin(), p.end(), out.begin());
  };
  return MooreCube::from_parts(std::move(shape), std::move(space), Primitive{{}, std::move(label)},
                               std::move(clamped));
}

MooreCube make_expr_cube(std::size_t dim, Shape shape, Space space, std::vector<Expr> exprs) {
  if (shape.size() != dim) {
    throw DimensionMismatch("shape " + shape.to_string() + " has length " + std::to_string(shape.size()) +
                            ", expected dimension " + std::to_string(dim));
  }
  if (exprs.size() != space.dim()) {
    throw DimensionMismatch(std::to_string(exprs.size()) + " expressions for target space " + space.to_string());
  }
  for (const auto& e : exprs) {
    if (e.max_variable() > dim) {
      throw DimensionMismatch("expression '" + e.to_string() + "' uses t" + std::to_string(e.max_variable()) +
                              " but the cube has dimension " + std::to_string(dim));
    }
  }
  ClampedAction action = [exprs](std::span<const double> t, std::span<double> out) {
    for (std::size_t k = 0; k < exprs.size(); ++k) out[k] = eval_expr(exprs[k], t);
  };
  return MooreCube::from_parts(std::move(shape), std::move(space), Primitive{std::move(exprs), {}},
                               std::move(action));
}

MooreCube point_cube(const Point& x, Space space) {
  if (x.size() != space.dim()) {
    throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, space " + space.to_string() +
                            " needs " + std::to_string(space.dim()));
  }
  std::vector<Expr> exprs;
  exprs.reserve(x.size());
  for (double v : x) exprs.push_back(Expr::constant(v));
  return make_expr_cube(0, Shape{}, std::move(space), std::move(exprs));
}

std::shared_ptr<const MooreCube> share(const MooreCube& c) { return std::make_shared<const MooreCube>(c); }

}  // namespace moore
