#ifndef UML_SPATIAL_KD_TREE_HPP
#define UML_SPATIAL_KD_TREE_HPP

#include "uml/core/error.hpp"
#include "uml/core/types.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace uml::spatial {

/// Axis-aligned kd-tree over the columns of a dataset.
///
/// Internal nodes split on the dimension of widest spread, at the median of
/// the node's points in that dimension: points with value < splitValue go
/// left, the rest go right. Every node stores the tight bounding box of its
/// points and the range of `indices()` holding them, so a leaf's points are a
/// contiguous slice.
///
/// The tree references the dataset it was built on; the dataset must outlive
/// the tree. A node whose points are all identical cannot be split and stays a
/// leaf even if it holds more than leafSize points.
template <typename Scalar = double>
class KdTree {
public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Node {
    Vector<Scalar> boundMin;
    Vector<Scalar> boundMax;
    Eigen::Index splitDim = -1;
    Scalar splitValue = 0;
    std::size_t left = npos;
    std::size_t right = npos;
    std::size_t begin = 0;
    std::size_t count = 0;

    bool isLeaf() const noexcept { return left == npos; }
  };

  explicit KdTree(const DataMatrix<Scalar> &data, std::size_t leafSize = 20)
      : data_(&data), leafSize_(leafSize) {
    if (data.cols() == 0)
      throw InvalidArgument("kd-tree: empty dataset");
    if (leafSize == 0)
      throw InvalidArgument("kd-tree: leaf size must be positive");
    indices_.resize(static_cast<std::size_t>(data.cols()));
    std::iota(indices_.begin(), indices_.end(), std::size_t{0});
    build(0, indices_.size());
  }

  KdTree(DataMatrix<Scalar> &&, std::size_t = 20) = delete;

  const DataMatrix<Scalar> &dataset() const noexcept { return *data_; }
  std::size_t leafSize() const noexcept { return leafSize_; }
  const std::vector<Node> &nodes() const noexcept { return nodes_; }
  const Node &root() const noexcept { return nodes_.front(); }
  const std::vector<std::size_t> &indices() const noexcept { return indices_; }

  std::span<const std::size_t> pointIndices(const Node &node) const noexcept {
    return {indices_.data() + node.begin, node.count};
  }

private:
  std::size_t build(std::size_t begin, std::size_t count) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    {
      Node &node = nodes_[id];
      node.begin = begin;
      node.count = count;
      node.boundMin = data_->col(static_cast<Eigen::Index>(indices_[begin]));
      node.boundMax = node.boundMin;
      for (std::size_t i = begin + 1; i < begin + count; ++i) {
        const auto p = data_->col(static_cast<Eigen::Index>(indices_[i]));
        node.boundMin = node.boundMin.cwiseMin(p);
        node.boundMax = node.boundMax.cwiseMax(p);
      }
    }
    if (count <= leafSize_)
      return id;

    Eigen::Index dim = 0;
    (nodes_[id].boundMax - nodes_[id].boundMin).maxCoeff(&dim);
    if (nodes_[id].boundMax(dim) == nodes_[id].boundMin(dim))
      return id;

    const auto first = indices_.begin() + static_cast<std::ptrdiff_t>(begin);
    std::sort(first, first + static_cast<std::ptrdiff_t>(count), [&](std::size_t a, std::size_t b) {
      const Scalar va = (*data_)(dim, static_cast<Eigen::Index>(a));
      const Scalar vb = (*data_)(dim, static_cast<Eigen::Index>(b));
      return va < vb || (va == vb && a < b);
    });
    auto value = [&](std::size_t pos) { return (*data_)(dim, static_cast<Eigen::Index>(indices_[begin + pos])); };

    // Move the cut off any run of equal values so that left < splitValue holds.
    std::size_t cut = count / 2;
    while (cut > 0 && value(cut - 1) == value(cut))
      --cut;
    if (cut == 0) {
      cut = count / 2 + 1;
      while (value(cut) == value(cut - 1))
        ++cut;
    }

    const Scalar splitValue = value(cut);
    const std::size_t left = build(begin, cut);
    const std::size_t right = build(begin + cut, count - cut);
    Node &node = nodes_[id];
    node.splitDim = dim;
    node.splitValue = splitValue;
    node.left = left;
    node.right = right;
    return id;
  }

  const DataMatrix<Scalar> *data_;
  std::size_t leafSize_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> indices_;
};

template <typename Scalar>
KdTree<Scalar> build_kdtree(const DataMatrix<Scalar> &data, std::size_t leafSize = 20) {
  return KdTree<Scalar>(data, leafSize);
}

} // namespace uml::spatial

#endif // UML_SPATIAL_KD_TREE_HPP
