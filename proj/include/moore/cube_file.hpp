#pragma once

// JSON cube files.
//
//   {"dim": 1, "shape": [2], "target": {"kind": "euclidean", "dim": 1},
//    "expr": ["t1^2"]}
//
// Cubes built by the structure maps carry a "provenance" tree instead of
// "expr"; loading replays the tree through the library operations. Products
// are {"kind": "product", "left": ..., "right": ...}.

#include <filesystem>
#include <string>
#include <string_view>

#include "moore/cube.hpp"
#include "moore/oracle.hpp"

namespace moore {

/// Throws FormatError for native actions.
std::string cube_to_json(const MooreCube& c, int indent = 2);

/// Throws FormatError on malformed documents, ParseError on bad expressions,
/// CompositionUndefined when a stored strict composite no longer composes
/// under `oracle`.
MooreCube cube_from_json(std::string_view text, const EqualityOracle& oracle = {});

void save_cube(const MooreCube& c, const std::filesystem::path& path);
MooreCube load_cube(const std::filesystem::path& path, const EqualityOracle& oracle = {});

std::string space_to_json(const Space& s);
Space space_from_json(std::string_view text);

}  // namespace moore
