#include "moore/ops.hpp"

#include <algorithm>

#include "moore/error.hpp"

namespace moore {

namespace {

void check_index(std::size_t i, std::size_t lo, std::size_t hi, const char* op, std::size_t dim) {
  if (i < lo || i > hi) {
    throw BadIndex(std::string(op) + " index " + std::to_string(i) + " out of range " + std::to_string(lo) + ".." +
                   std::to_string(hi) + " for a cube of dimension " + std::to_string(dim));
  }
}

}  // namespace

MooreCube face(const MooreCube& c, std::size_t i, Sign alpha) {
  const std::size_t n = c.dim();
  if (n == 0) throw BadIndex("face of a 0-cube");
  check_index(i, 1, n, "face", n);
  const double at = alpha == Sign::minus ? 0.0 : c.shape().extent(i);
  const std::size_t slot = i - 1;
  ClampedAction action = [c, slot, at, n](std::span<const double> t, std::span<double> out) {
    detail::Coords full(n);
    for (std::size_t k = 0, src = 0; k < n; ++k) full[k] = k == slot ? at : t[src++];
    c.eval_into(full.cspan(), out);
  };
  return MooreCube::from_parts(c.shape().without(i), c.space(), FaceOf{share(c), i, alpha}, std::move(action));
}

MooreCube degeneracy(const MooreCube& c, std::size_t i) {
  const std::size_t n = c.dim();
  check_index(i, 1, n + 1, "degeneracy", n);
  const std::size_t slot = i - 1;
  ClampedAction action = [c, slot, n](std::span<const double> t, std::span<double> out) {
    detail::Coords reduced(n);
    for (std::size_t k = 0, dst = 0; k < n + 1; ++k) {
      if (k != slot) reduced[dst++] = t[k];
    }
    c.eval_into(reduced.cspan(), out);
  };
  return MooreCube::from_parts(c.shape().inserted(i, 0.0), c.space(), DegeneracyOf{share(c), i}, std::move(action));
}

MooreCube connection(const MooreCube& c, std::size_t i, Sign alpha) {
  const std::size_t n = c.dim();
  if (n == 0) throw BadIndex("connection of a 0-cube");
  check_index(i, 1, n, "connection", n);
  const std::size_t slot = i - 1;
  const bool use_max = alpha == Sign::minus;
  ClampedAction action = [c, slot, n, use_max](std::span<const double> t, std::span<double> out) {
    detail::Coords merged(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k < slot) {
        merged[k] = t[k];
      } else if (k == slot) {
        merged[k] = use_max ? std::max(t[k], t[k + 1]) : std::min(t[k], t[k + 1]);
      } else {
        merged[k] = t[k + 1];
      }
    }
    c.eval_into(merged.cspan(), out);
  };
  const double r = c.shape().extent(i);
  return MooreCube::from_parts(c.shape().inserted(i + 1, r), c.space(), ConnectionOf{share(c), i, alpha},
                               std::move(action));
}

MooreCube reverse(const MooreCube& c, std::size_t i) {
  const std::size_t n = c.dim();
  if (n == 0) throw BadIndex("reverse of a 0-cube");
  check_index(i, 1, n, "reverse", n);
  const std::size_t slot = i - 1;
  const double r = c.shape().extent(i);
  ClampedAction action = [c, slot, n, r](std::span<const double> t, std::span<double> out) {
    detail::Coords flipped(n);
    for (std::size_t k = 0; k < n; ++k) flipped[k] = t[k];
    flipped[slot] = r - std::min(t[slot], r);
    c.eval_into(flipped.cspan(), out);
  };
  return MooreCube::from_parts(c.shape(), c.space(), ReverseOf{share(c), i}, std::move(action));
}

}  // namespace moore
