#pragma once

#include <cstddef>

#include "moore/cube.hpp"

namespace moore {

// Unary structure maps on Moore cubes. Indices are 1-based; out-of-range
// indices throw BadIndex.

/// ∂_i^α: evaluate direction i at 0 (minus) or r_i (plus) and drop r_i.
MooreCube face(const MooreCube& c, std::size_t i, Sign alpha);

/// ε_i, 1 <= i <= n+1: insert a zero extent at slot i; the action ignores t_i.
MooreCube degeneracy(const MooreCube& c, std::size_t i);

/// Γ_i^α, 1 <= i <= n: repeat r_i at slots i, i+1 and feed max(t_i, t_{i+1})
/// (minus) or min(t_i, t_{i+1}) (plus) into slot i of c.
MooreCube connection(const MooreCube& c, std::size_t i, Sign alpha);

/// -_i: same shape, t_i replaced by r_i - min(t_i, r_i).
MooreCube reverse(const MooreCube& c, std::size_t i);

}  // namespace moore
