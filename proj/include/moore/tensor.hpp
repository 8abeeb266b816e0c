#pragma once

#include "moore/cube.hpp"

namespace moore {

/// a ⊗ b over X x Y: concatenated shape, action (t, u) -> (a(t), b(u)).
MooreCube tensor(const MooreCube& a, const MooreCube& b);

/// The same cube with its target relabelled as `space`, which must have the
/// same Euclidean leaves in the same order (a reassociation of products).
MooreCube respace(const MooreCube& c, Space space);

/// respace(c, c.space().flattened()).
inline MooreCube canonical(const MooreCube& c) { return respace(c, c.space().flattened()); }

}  // namespace moore
