#include "moore/space.hpp"

#include <algorithm>
#include <cmath>

#include "moore/error.hpp"

namespace moore {

struct Space::Node {
  std::size_t dim = 1;
  // Both null for a Euclidean leaf.
  std::shared_ptr<const Space> left;
  std::shared_ptr<const Space> right;
};

Space::Space() : Space(euclidean(1)) {}

Space::Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Space Space::euclidean(std::size_t d) {
  if (d == 0) {
    throw DimensionMismatch("euclidean space needs dimension >= 1");
  }
  auto node = std::make_shared<Node>();
  node->dim = d;
  return Space(std::move(node));
}

Space Space::product(Space left, Space right) {
  auto node = std::make_shared<Node>();
  node->dim = left.dim() + right.dim();
  node->left = std::make_shared<const Space>(std::move(left));
  node->right = std::make_shared<const Space>(std::move(right));
  return Space(std::move(node));
}

std::size_t Space::dim() const noexcept { return node_->dim; }

bool Space::is_product() const noexcept { return node_->left != nullptr; }

const Space& Space::left() const {
  if (!is_product()) throw DimensionMismatch("left() of a Euclidean space");
  return *node_->left;
}

const Space& Space::right() const {
  if (!is_product()) throw DimensionMismatch("right() of a Euclidean space");
  return *node_->right;
}

double Space::distance(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != dim() || b.size() != dim()) {
    throw DimensionMismatch("point arity does not match space " + to_string());
  }
  if (!is_product()) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = a[k] - b[k];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  const std::size_t m = left().dim();
  return std::max(left().distance(a.first(m), b.first(m)),
                  right().distance(a.subspan(m), b.subspan(m)));
}

std::vector<std::size_t> Space::leaves() const {
  if (!is_product()) return {dim()};
  auto out = left().leaves();
  const auto rest = right().leaves();
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Space Space::flattened() const {
  const auto dims = leaves();
  Space acc = euclidean(dims.back());
  for (auto it = dims.rbegin() + 1; it != dims.rend(); ++it) {
    acc = product(euclidean(*it), std::move(acc));
  }
  return acc;
}

std::string Space::to_string() const {
  if (!is_product()) return "R^" + std::to_string(dim());
  return "(" + left().to_string() + " x " + right().to_string() + ")";
}

bool operator==(const Space& a, const Space& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_product() != b.is_product() || a.dim() != b.dim()) return false;
  if (!a.is_product()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

}  // namespace moore
