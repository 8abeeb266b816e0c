#include "moore/compose.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "moore/error.hpp"
#include "moore/ops.hpp"

namespace moore {

namespace {

std::string join(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) os << ", ";
    os << v[k];
  }
  os << ')';
  return os.str();
}

void check_pair(const MooreCube& a, const MooreCube& b, std::size_t j) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("cannot compose cubes of dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  if (!(a.space() == b.space())) {
    throw DimensionMismatch("cannot compose cubes over " + a.space().to_string() + " and " + b.space().to_string());
  }
  if (j < 1 || j > a.dim()) {
    throw BadIndex("composition direction " + std::to_string(j) + " out of range 1.." + std::to_string(a.dim()));
  }
}

[[noreturn]] void throw_action_mismatch(const MooreCube& a, const MooreCube& b, std::size_t j, const Witness& w) {
  CompositionUndefined::Details d;
  d.reason = CompositionUndefined::Reason::action;
  d.direction = j;
  d.left_extents = a.shape().values();
  d.right_extents = b.shape().values();
  d.witness_point = w.point;
  d.left_value = w.left_value;
  d.right_value = w.right_value;
  d.distance = w.distance;
  throw CompositionUndefined("composition in direction " + std::to_string(j) +
                                 " undefined: shared faces differ at " + join(w.point) + ": " +
                                 join(w.left_value) + " vs " + join(w.right_value),
                             std::move(d));
}

ClampedAction piecewise(const MooreCube& a, const MooreCube& b, std::size_t j) {
  const std::size_t slot = j - 1;
  const double split = a.shape().extent(j);
  const std::size_t n = a.dim();
  return [a, b, slot, split, n](std::span<const double> t, std::span<double> out) {
    if (t[slot] <= split) {
      a.eval_into(t, out);
      return;
    }
    detail::Coords shifted(n);
    for (std::size_t k = 0; k < n; ++k) shifted[k] = t[k];
    shifted[slot] = t[slot] - split;
    b.eval_into(shifted.cspan(), out);
  };
}

void check_composable_lenient(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle) {
  check_pair(a, b, j);
  const auto cmp = compare_action(face(a, j, Sign::plus), face(b, j, Sign::minus), oracle);
  if (!cmp.equal) throw_action_mismatch(a, b, j, *cmp.witness);
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> strides(counts.size(), 1);
  for (std::size_t k = counts.size(); k-- > 1;) strides[k - 1] = strides[k] * counts[k];
  return strides;
}

std::size_t linear(const std::vector<std::size_t>& index, const std::vector<std::size_t>& strides) {
  std::size_t at = 0;
  for (std::size_t k = 0; k < index.size(); ++k) at += index[k] * strides[k];
  return at;
}

// Calls visit(index) for every multi-index below counts, last axis fastest.
template <class Visit>
void for_each_index(const std::vector<std::size_t>& counts, Visit&& visit) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{1}, std::multiplies<>());
  std::vector<std::size_t> index(counts.size(), 0);
  for (std::size_t step = 0; step < total; ++step) {
    visit(index);
    for (std::size_t k = counts.size(); k-- > 0;) {
      if (++index[k] < counts[k]) break;
      index[k] = 0;
    }
  }
}

template <class Check>
void check_adjacent(const CubeGrid& grid, Check&& check) {
  const auto& counts = grid.counts();
  for (std::size_t axis = 0; axis < counts.size(); ++axis) {
    for_each_index(counts, [&](const std::vector<std::size_t>& index) {
      if (index[axis] + 1 >= counts[axis]) return;
      auto next = index;
      ++next[axis];
      try {
        check(grid.at(index), grid.at(next), axis + 1);
      } catch (const CompositionUndefined& e) {
        auto details = e.details();
        details.grid_position = index;
        std::ostringstream os;
        os << "grid cell (";
        for (std::size_t k = 0; k < index.size(); ++k) os << (k ? ", " : "") << index[k];
        os << ") and its successor in direction " << (axis + 1) << ": " << e.what();
        throw CompositionUndefined(os.str(), std::move(details));
      }
    });
  }
}

}  // namespace

void check_composable_strict(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle) {
  check_pair(a, b, j);
  const MooreCube fa = face(a, j, Sign::plus);
  const MooreCube fb = face(b, j, Sign::minus);
  if (!shapes_close(fa.shape(), fb.shape(), oracle.tol_shape)) {
    CompositionUndefined::Details d;
    d.reason = CompositionUndefined::Reason::shape;
    d.direction = j;
    d.left_extents = a.shape().values();
    d.right_extents = b.shape().values();
    throw CompositionUndefined("composition in direction " + std::to_string(j) + " undefined: extents " +
                                   a.shape().to_string() + " and " + b.shape().to_string() +
                                   " differ outside direction " + std::to_string(j),
                               std::move(d));
  }
  const auto cmp = compare_strict(fa, fb, oracle);
  if (!cmp.equal) throw_action_mismatch(a, b, j, *cmp.witness);
}

MooreCube compose_strict(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle) {
  check_composable_strict(a, b, j, oracle);
  Shape shape = a.shape().with_extent(j, a.shape().extent(j) + b.shape().extent(j));
  return MooreCube::from_parts(std::move(shape), a.space(), ComposeOf{share(a), share(b), j, false},
                               piecewise(a, b, j));
}

MooreCube compose_lenient(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle) {
  check_composable_lenient(a, b, j, oracle);
  std::vector<double> extents(a.dim());
  for (std::size_t k = 1; k <= a.dim(); ++k) {
    extents[k - 1] = k == j ? a.shape().extent(k) + b.shape().extent(k)
                            : std::max(a.shape().extent(k), b.shape().extent(k));
  }
  return MooreCube::from_parts(Shape(std::move(extents)), a.space(), ComposeOf{share(a), share(b), j, true},
                               piecewise(a, b, j));
}

CubeGrid::CubeGrid(std::vector<std::size_t> counts, std::vector<MooreCube> cells)
    : counts_(std::move(counts)), cells_(std::move(cells)) {
  const std::size_t total = std::accumulate(counts_.begin(), counts_.end(), std::size_t{1}, std::multiplies<>());
  if (std::find(counts_.begin(), counts_.end(), std::size_t{0}) != counts_.end()) {
    throw DimensionMismatch("grid counts must be >= 1");
  }
  if (cells_.size() != total) {
    throw DimensionMismatch("grid needs " + std::to_string(total) + " cells, got " + std::to_string(cells_.size()));
  }
  for (const auto& c : cells_) {
    if (c.dim() != counts_.size()) {
      throw DimensionMismatch("grid of rank " + std::to_string(counts_.size()) + " holds a cube of dimension " +
                              std::to_string(c.dim()));
    }
    if (!(c.space() == cells_.front().space())) throw DimensionMismatch("grid cells over different spaces");
  }
}

CubeGrid CubeGrid::square(std::size_t i, std::size_t j, MooreCube a, MooreCube b, MooreCube c, MooreCube d) {
  const std::size_t n = a.dim();
  if (i == j || i < 1 || j < 1 || i > n || j > n) {
    throw BadIndex("square grid needs two distinct directions in 1.." + std::to_string(n));
  }
  std::vector<std::size_t> counts(n, 1);
  counts[i - 1] = 2;
  counts[j - 1] = 2;
  std::vector<MooreCube> cells(4, a);
  const auto strides = strides_of(counts);
  auto put = [&](std::size_t ki, std::size_t kj, MooreCube cube) {
    std::vector<std::size_t> index(n, 0);
    index[i - 1] = ki;
    index[j - 1] = kj;
    cells[linear(index, strides)] = std::move(cube);
  };
  put(0, 0, std::move(a));
  put(1, 0, std::move(b));
  put(0, 1, std::move(c));
  put(1, 1, std::move(d));
  return CubeGrid(std::move(counts), std::move(cells));
}

const MooreCube& CubeGrid::at(const std::vector<std::size_t>& index) const {
  if (index.size() != counts_.size()) throw BadIndex("grid index has the wrong rank");
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= counts_[k]) throw BadIndex("grid index out of range");
  }
  return cells_[linear(index, strides_of(counts_))];
}

MooreCube multi_compose(const CubeGrid& grid, const EqualityOracle& oracle, std::vector<std::size_t> fold_order) {
  const std::size_t n = grid.dim();
  if (fold_order.empty()) {
    fold_order.resize(n);
    std::iota(fold_order.begin(), fold_order.end(), std::size_t{1});
  }
  {
    auto sorted = fold_order;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.size() == n;
    for (std::size_t k = 0; ok && k < n; ++k) ok = sorted[k] == k + 1;
    if (!ok) throw BadIndex("fold order must be a permutation of 1..n");
  }
  check_adjacent(grid, [&](const MooreCube& a, const MooreCube& b, std::size_t j) {
    check_composable_strict(a, b, j, oracle);
  });

  auto counts = grid.counts();
  auto cells = grid.cells();
  for (std::size_t direction : fold_order) {
    const std::size_t axis = direction - 1;
    if (counts[axis] == 1) continue;
    const auto strides = strides_of(counts);
    auto folded_counts = counts;
    folded_counts[axis] = 1;
    const auto folded_strides = strides_of(folded_counts);
    std::vector<MooreCube> folded(cells.size() / counts[axis], cells.front());
    for_each_index(folded_counts, [&](const std::vector<std::size_t>& index) {
      auto at = index;
      MooreCube acc = cells[linear(at, strides)];
      for (std::size_t k = 1; k < counts[axis]; ++k) {
        at[axis] = k;
        acc = compose_strict(acc, cells[linear(at, strides)], direction, oracle);
      }
      folded[linear(index, folded_strides)] = std::move(acc);
    });
    counts = std::move(folded_counts);
    cells = std::move(folded);
  }
  return cells.front();
}

MooreCube multi_compose_lenient(const CubeGrid& grid, const EqualityOracle& oracle) {
  check_adjacent(grid, [&](const MooreCube& a, const MooreCube& b, std::size_t j) {
    check_composable_lenient(a, b, j, oracle);
  });
  const auto& counts = grid.counts();
  const std::size_t n = grid.dim();
  const auto strides = strides_of(counts);

  std::vector<std::vector<double>> widths(n);
  std::vector<std::vector<double>> offsets(n);
  std::vector<double> total(n, 0.0);
  for (std::size_t axis = 0; axis < n; ++axis) {
    widths[axis].assign(counts[axis], 0.0);
    for_each_index(counts, [&](const std::vector<std::size_t>& index) {
      const double r = grid.at(index).shape().extents()[axis];
      widths[axis][index[axis]] = std::max(widths[axis][index[axis]], r);
    });
    double offset = 0.0;
    for (double w : widths[axis]) {
      offsets[axis].push_back(offset);
      offset = offset + w;
    }
    total[axis] = offset;
  }

  std::vector<std::shared_ptr<const MooreCube>> shared;
  shared.reserve(grid.cells().size());
  for (const auto& c : grid.cells()) shared.push_back(share(c));

  ClampedAction action = [cells = grid.cells(), counts, strides, widths, offsets, n](std::span<const double> t,
                                                                                     std::span<double> out) {
    detail::Coords local(n);
    std::size_t at = 0;
    for (std::size_t axis = 0; axis < n; ++axis) {
      std::size_t k = 0;
      while (k + 1 < counts[axis] && t[axis] > offsets[axis][k] + widths[axis][k]) ++k;
      local[axis] = k == 0 ? t[axis] : t[axis] - offsets[axis][k];
      at += k * strides[axis];
    }
    cells[at].eval_into(local.cspan(), out);
  };
  return MooreCube::from_parts(Shape(std::move(total)), grid.cells().front().space(),
                               GridOf{counts, std::move(shared), widths}, std::move(action));
}

}  // namespace moore
