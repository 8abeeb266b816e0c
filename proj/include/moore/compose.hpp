#pragma once

#include <cstddef>
#include <vector>

#include "moore/cube.hpp"
#include "moore/oracle.hpp"

namespace moore {

/// a ∘_j b, defined iff ∂_j^+ a = ∂_j^- b strictly (shared face shapes within
/// tol_shape, values within tol_val). The composite has extent a.r_j + b.r_j
/// in direction j and copies every other extent from a; points with
/// t_j <= a.r_j are evaluated in a, the rest in b shifted by a.r_j.
///
/// Throws DimensionMismatch, BadIndex or CompositionUndefined.
MooreCube compose_strict(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle = {});

/// Like compose_strict, but only requires the shared faces to agree as actions;
/// every non-j extent of the composite is max(a.r_i, b.r_i).
MooreCube compose_lenient(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle = {});

/// Throws CompositionUndefined unless compose_strict(a, b, j) is defined.
void check_composable_strict(const MooreCube& a, const MooreCube& b, std::size_t j, const EqualityOracle& oracle);

/// n-dimensional array of n-cubes: axis k of the grid is direction k+1.
class CubeGrid {
 public:
  /// cells are stored last axis fastest; counts.size() must equal the cube
  /// dimension and every count must be >= 1.
  CubeGrid(std::vector<std::size_t> counts, std::vector<MooreCube> cells);

  /// The 2x2 grid [[a, b], [c, d]]: b follows a in direction i, c follows a
  /// in direction j, d is diagonal to a.
  static CubeGrid square(std::size_t i, std::size_t j, MooreCube a, MooreCube b, MooreCube c, MooreCube d);

  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  std::size_t dim() const noexcept { return counts_.size(); }
  const MooreCube& at(const std::vector<std::size_t>& index) const;
  const std::vector<MooreCube>& cells() const noexcept { return cells_; }

 private:
  std::vector<std::size_t> counts_;
  std::vector<MooreCube> cells_;
};

/// Composite of a strictly composable grid, folding one direction at a time in
/// `fold_order` (a permutation of 1..n; ascending when empty). Every adjacent
/// pair is checked first; a failure carries the grid position of the pair.
MooreCube multi_compose(const CubeGrid& grid, const EqualityOracle& oracle = {},
                        std::vector<std::size_t> fold_order = {});

/// Aligned lenient composite: the slab widths along each axis are the maxima
/// of the cell extents in that slab, so cells narrower than their slab are
/// stretched by clamping. Adjacent cells must agree on shared faces as
/// actions. For a single row this coincides with compose_lenient.
MooreCube multi_compose_lenient(const CubeGrid& grid, const EqualityOracle& oracle = {});

}  // namespace moore
