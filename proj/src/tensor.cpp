#include "moore/tensor.hpp"

#include "moore/error.hpp"

namespace moore {

MooreCube tensor(const MooreCube& a, const MooreCube& b) {
  const std::size_t m = a.dim();
  const std::size_t dx = a.space().dim();
  ClampedAction action = [a, b, m, dx](std::span<const double> t, std::span<double> out) {
    a.eval_into(t.first(m), out.first(dx));
    b.eval_into(t.subspan(m), out.subspan(dx));
  };
  return MooreCube::from_parts(a.shape().concat(b.shape()), Space::product(a.space(), b.space()),
                               TensorOf{share(a), share(b)}, std::move(action));
}

MooreCube respace(const MooreCube& c, Space space) {
  if (c.space().leaves() != space.leaves()) {
    throw DimensionMismatch("cannot relabel " + c.space().to_string() + " as " + space.to_string());
  }
  ClampedAction action = [c](std::span<const double> t, std::span<double> out) { c.eval_into(t, out); };
  return MooreCube::from_parts(c.shape(), std::move(space), RespaceOf{share(c)}, std::move(action));
}

}  // namespace moore
