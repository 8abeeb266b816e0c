#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace moore {

/// A point of the target space, stored as flat coordinates (left factor first
/// for product spaces).
using Point = std::vector<double>;

/// Target space of a cube: Euclidean R^d or a binary product of spaces.
///
/// Products are kept as nested pairs, so (X x Y) x Z and X x (Y x Z) compare
/// unequal; `flattened()` gives the canonical right-nested form used when a
/// reassociation is intended.
class Space {
 public:
  /// R^1.
  Space();

  static Space euclidean(std::size_t d);
  static Space product(Space left, Space right);

  std::size_t dim() const noexcept;
  bool is_product() const noexcept;
  const Space& left() const;
  const Space& right() const;

  /// Euclidean metric on R^d; max of the factor distances on products.
  double distance(std::span<const double> a, std::span<const double> b) const;

  /// Dimensions of the Euclidean leaves, left to right.
  std::vector<std::size_t> leaves() const;

  /// Right-nested product of the same leaves: R^a x (R^b x (R^c ...)).
  Space flattened() const;

  /// "R^2", "(R^1 x R^3)".
  std::string to_string() const;

  friend bool operator==(const Space& a, const Space& b);

 private:
  struct Node;
  explicit Space(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

}  // namespace moore
