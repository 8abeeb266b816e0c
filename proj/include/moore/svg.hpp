#pragma once

#include <string>

#include "moore/cube.hpp"

namespace moore {

struct SvgOptions {
  double size = 400.0;   // longest side of the shape rectangle, in px
  double margin = 30.0;
  int levels = 4;        // constancy lines per connection or degeneracy
};

/// SVG 1.1 picture of a 2-cube: the shape rectangle (class "shape"), seams of
/// compositions (class "seam") and lines of constancy of connections and
/// degeneracies (class "constancy"). A zero extent is drawn with a nominal
/// width. Throws DimensionMismatch unless c.dim() == 2.
std::string render_svg(const MooreCube& c, const SvgOptions& opts = {});

}  // namespace moore
