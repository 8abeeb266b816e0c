#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "moore/cube.hpp"

namespace moore {

/// Sampling proxy for equality of actions.
///
/// Along an axis of extent r the samples are k*r/(s-1) for 0 <= k < s, plus
/// r + beyond_margin; for r = 0 they are {0, beyond_margin}. A grid is the
/// Cartesian product of the per-axis samples.
struct EqualityOracle {
  std::size_t samples_per_axis = 5;
  double beyond_margin = 1.0;
  double tol_val = 1e-9;
  double tol_shape = 1e-9;

  /// Throws FormatError on samples_per_axis < 2, non-positive margin or
  /// negative tolerances.
  void validate() const;

  std::vector<double> axis_samples(double extent) const;
  std::vector<std::vector<double>> axes(const Shape& shape) const;
};

/// Visits every point of the product of `axes`, last axis fastest. A 0-axis
/// product has exactly one (empty) point.
void for_each_grid_point(const std::vector<std::vector<double>>& axes,
                         const std::function<void(std::span<const double>)>& visit);

std::vector<std::vector<double>> oracle_grid(const Shape& shape, const EqualityOracle& oracle);

struct Witness {
  std::vector<double> point;
  Point left_value;
  Point right_value;
  double distance = 0.0;
};

enum class Mismatch { none, dimension, space, shape, value };

struct Comparison {
  bool equal = false;
  Mismatch mismatch = Mismatch::none;
  // Present for Mismatch::value: the first sample point of maximal distance.
  std::optional<Witness> witness;
  std::size_t points_checked = 0;

  explicit operator bool() const noexcept { return equal; }
};

bool shapes_close(const Shape& a, const Shape& b, double tol);

/// Same dim and space, shapes within tol_shape, values within tol_val on the
/// grid of a's shape.
Comparison compare_strict(const MooreCube& a, const MooreCube& b, const EqualityOracle& oracle);

/// Same dim and space, values within tol_val on grid(a) and grid(b); shapes
/// are ignored.
Comparison compare_action(const MooreCube& a, const MooreCube& b, const EqualityOracle& oracle);

inline bool equals_strict(const MooreCube& a, const MooreCube& b, const EqualityOracle& oracle = {}) {
  return compare_strict(a, b, oracle).equal;
}

inline bool equals_action(const MooreCube& a, const MooreCube& b, const EqualityOracle& oracle = {}) {
  return compare_action(a, b, oracle).equal;
}

}  // namespace moore
