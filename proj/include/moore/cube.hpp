#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "moore/expr.hpp"
#include "moore/space.hpp"

namespace moore {

enum class Sign { minus, plus };

inline char sign_char(Sign s) { return s == Sign::minus ? '-' : '+'; }
inline Sign opposite(Sign s) { return s == Sign::minus ? Sign::plus : Sign::minus; }

/// Extent vector (r1, ..., rn) of a cube. All extents are finite and >= 0.
///
/// Slot arguments of the mutating helpers are 1-based, matching the index
/// convention of the structure maps; `extents()` is an ordinary 0-based span.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<double> extents);
  Shape(std::initializer_list<double> extents);

  std::size_t size() const noexcept { return extents_.size(); }
  bool empty() const noexcept { return extents_.empty(); }
  std::span<const double> extents() const noexcept { return extents_; }
  const std::vector<double>& values() const noexcept { return extents_; }

  /// r_i, 1-based.
  double extent(std::size_t i) const;

  Shape without(std::size_t slot) const;
  Shape inserted(std::size_t slot, double value) const;
  Shape with_extent(std::size_t slot, double value) const;
  Shape concat(const Shape& other) const;

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<double> extents_;
};

/// User-supplied action, called on coordinates already clamped to the box.
using NativeAction = std::function<Point(std::span<const double>)>;

class MooreCube;

// Provenance: how a cube was built. Evaluation never consults it (each node
// carries its own evaluator); it drives serialization and diagram rendering.
struct Primitive {
  std::vector<Expr> exprs;  // empty for native actions
  std::string label;
};
struct FaceOf {
  std::shared_ptr<const MooreCube> of;
  std::size_t index;
  Sign sign;
};
struct DegeneracyOf {
  std::shared_ptr<const MooreCube> of;
  std::size_t index;
};
struct ConnectionOf {
  std::shared_ptr<const MooreCube> of;
  std::size_t index;
  Sign sign;
};
struct ReverseOf {
  std::shared_ptr<const MooreCube> of;
  std::size_t index;
};
struct ComposeOf {
  std::shared_ptr<const MooreCube> left;
  std::shared_ptr<const MooreCube> right;
  std::size_t direction;
  bool lenient;
};
/// Aligned lenient composite of a grid; axis k of the grid is direction k+1.
struct GridOf {
  std::vector<std::size_t> counts;
  std::vector<std::shared_ptr<const MooreCube>> cells;  // last axis fastest
  std::vector<std::vector<double>> widths;              // per axis, per slab
};
struct TensorOf {
  std::shared_ptr<const MooreCube> left;
  std::shared_ptr<const MooreCube> right;
};
/// Same action, relabelled target space with identical leaf sequence.
struct RespaceOf {
  std::shared_ptr<const MooreCube> of;
};

using Construction =
    std::variant<Primitive, FaceOf, DegeneracyOf, ConnectionOf, ReverseOf, ComposeOf, GridOf, TensorOf, RespaceOf>;

/// Evaluator on clamped coordinates; writes space.dim() values into `out`.
using ClampedAction = std::function<void(std::span<const double> t, std::span<double> out)>;

/// An element (f, (r)) of M_n(X): shape, target space and action.
///
/// The action is evaluated on coordinates clamped to the box prod [0, r_i], so
/// f(..., t_i, ...) = f(..., r_i, ...) for t_i >= r_i holds for every cube by
/// construction. Cubes are immutable and cheap to copy.
class MooreCube {
 public:
  std::size_t dim() const noexcept;
  const Shape& shape() const noexcept;
  const Space& space() const noexcept;
  const Construction& construction() const noexcept;

  /// Throws DimensionMismatch when t.size() != dim().
  Point eval(std::span<const double> t) const;
  Point eval(std::initializer_list<double> t) const { return eval(std::span<const double>(t.begin(), t.size())); }

  /// Allocation-free evaluation; `out.size()` must equal space().dim().
  void eval_into(std::span<const double> t, std::span<double> out) const;

  /// Low-level constructor used by the structure maps.
  static MooreCube from_parts(Shape shape, Space space, Construction how, ClampedAction action);

 private:
  struct Node;
  explicit MooreCube(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// (f, (r)) from a native evaluator. Throws InvalidShape / DimensionMismatch.
MooreCube make_cube(std::size_t dim, Shape shape, Space space, NativeAction action, std::string label = {});

/// Cube whose k-th coordinate function is exprs[k] in the variables t1..t_dim.
MooreCube make_expr_cube(std::size_t dim, Shape shape, Space space, std::vector<Expr> exprs);

/// The constant 0-cube at x.
MooreCube point_cube(const Point& x, Space space);

/// Shared-pointer handle used in provenance nodes.
std::shared_ptr<const MooreCube> share(const MooreCube& c);

namespace detail {

/// Small inline buffer for temporary coordinate tuples.
class Coords {
 public:
  explicit Coords(std::size_t n) : size_(n) {
    if (n > kInline) heap_.resize(n);
  }
  double* data() noexcept { return size_ > kInline ? heap_.data() : inline_; }
  std::span<double> span() noexcept { return {data(), size_}; }
  std::span<const double> cspan() noexcept { return {data(), size_}; }
  double& operator[](std::size_t k) noexcept { return data()[k]; }

 private:
  static constexpr std::size_t kInline = 12;
  std::size_t size_;
  double inline_[kInline];
  std::vector<double> heap_;
};

}  // namespace detail

}  // namespace moore
