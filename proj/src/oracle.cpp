#include "moore/oracle.hpp"

#include <cmath>
#include <limits>

#include "moore/error.hpp"

namespace moore {

void EqualityOracle::validate() const {
  if (samples_per_axis < 2) throw FormatError("oracle needs at least 2 samples per axis");
  if (!(beyond_margin > 0.0) || !std::isfinite(beyond_margin)) {
    throw FormatError("oracle beyond_margin must be a positive real");
  }
  if (!(tol_val >= 0.0) || !(tol_shape >= 0.0)) throw FormatError("oracle tolerances must be non-negative");
}

std::vector<double> EqualityOracle::axis_samples(double extent) const {
  if (extent == 0.0) return {0.0, beyond_margin};
  std::vector<double> out;
  out.reserve(samples_per_axis + 1);
  const double denom = static_cast<double>(samples_per_axis - 1);
  for (std::size_t k = 0; k < samples_per_axis; ++k) {
    out.push_back(static_cast<double>(k) * extent / denom);
  }
  out.push_back(extent + beyond_margin);
  return out;
}

std::vector<std::vector<double>> EqualityOracle::axes(const Shape& shape) const {
  std::vector<std::vector<double>> out;
  out.reserve(shape.size());
  for (double r : shape.extents()) out.push_back(axis_samples(r));
  return out;
}

void for_each_grid_point(const std::vector<std::vector<double>>& axes,
                         const std::function<void(std::span<const double>)>& visit) {
  const std::size_t n = axes.size();
  for (const auto& a : axes) {
    if (a.empty()) return;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> point(n);
  for (std::size_t k = 0; k < n; ++k) point[k] = axes[k][0];
  while (true) {
    visit(point);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) {
        point[k] = axes[k][idx[k]];
        break;
      }
      idx[k] = 0;
      point[k] = axes[k][0];
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<std::vector<double>> oracle_grid(const Shape& shape, const EqualityOracle& oracle) {
  std::vector<std::vector<double>> points;
  for_each_grid_point(oracle.axes(shape), [&](std::span<const double> t) { points.emplace_back(t.begin(), t.end()); });
  return points;
}

bool shapes_close(const Shape& a, const Shape& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(std::fabs(a.extents()[k] - b.extents()[k]) <= tol)) return false;
  }
  return true;
}

namespace {

// Scans the grids, keeping the first point of maximal distance.
void scan_values(const MooreCube& a, const MooreCube& b, const Shape& grid_shape, const EqualityOracle& oracle,
                 Comparison& result, double& worst) {
  const Space& space = a.space();
  Point va(space.dim());
  Point vb(space.dim());
  for_each_grid_point(oracle.axes(grid_shape), [&](std::span<const double> t) {
    ++result.points_checked;
    a.eval_into(t, va);
    b.eval_into(t, vb);
    double d = space.distance(va, vb);
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    if (d > oracle.tol_val && d > worst) {
      worst = d;
      result.witness = Witness{{t.begin(), t.end()}, va, vb, d};
    }
  });
}

bool structural_mismatch(const MooreCube& a, const MooreCube& b, Comparison& result) {
  if (a.dim() != b.dim()) {
    result.mismatch = Mismatch::dimension;
    return true;
  }
  if (!(a.space() == b.space())) {
    result.mismatch = Mismatch::space;
    return true;
  }
  return false;
}

}  // namespace

Comparison compare_strict(const MooreCube& a, const MooreCube& b, const EqualityOracle& oracle) {
  Comparison result;
  if (structural_mismatch(a, b, result)) return result;
  if (!shapes_close(a.shape(), b.shape(), oracle.tol_shape)) {
    result.mismatch = Mismatch::shape;
    return result;
  }
  double worst = -1.0;
  scan_values(a, b, a.shape(), oracle, result, worst);
  result.equal = !result.witness.has_value();
  result.mismatch = result.equal ? Mismatch::none : Mismatch::value;
  return result;
}

Comparison compare_action(const MooreCube& a, const MooreCube& b, const EqualityOracle& oracle) {
  Comparison result;
  if (structural_mismatch(a, b, result)) return result;
  double worst = -1.0;
  scan_values(a, b, a.shape(), oracle, result, worst);
  scan_values(a, b, b.shape(), oracle, result, worst);
  result.equal = !result.witness.has_value();
  result.mismatch = result.equal ? Mismatch::none : Mismatch::value;
  return result;
}

}  // namespace moore
