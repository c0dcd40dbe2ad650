#ifndef UML_CLASSIFIERS_DECISION_TREE_HPP
#define UML_CLASSIFIERS_DECISION_TREE_HPP

#include "uml/classifiers/classifier.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace uml::classifiers {

/// Classification tree grown greedily top-down with Gini impurity.
///
/// At each node every feature and every midpoint between consecutive distinct
/// sorted values is scanned; the split with the largest Gini gain wins, ties
/// going to the lower feature index and then the lower threshold. A node
/// becomes a leaf when it is pure, sits at maxDepth, or has no split leaving at
/// least minLeafSize points on both sides. Points with value < threshold are
/// routed left. maxDepth == 0 means unbounded.
template <typename ScalarT = double>
class DecisionTree {
public:
  using Scalar = ScalarT;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Node {
    std::size_t feature = npos;
    Scalar threshold = 0;
    std::size_t left = npos;
    std::size_t right = npos;
    /// Empirical class distribution; only filled for leaves.
    VectorXd probabilities;

    bool isLeaf() const noexcept { return left == npos; }
  };

  explicit DecisionTree(std::size_t minLeafSize = 10, std::size_t maxDepth = 0)
      : minLeafSize_(minLeafSize), maxDepth_(maxDepth) {
    if (minLeafSize == 0)
      throw InvalidArgument("decision tree: minimum leaf size must be positive");
  }

  /// Rebuilds a tree from stored nodes (node 0 is the root). Validates shape.
  static DecisionTree fromNodes(std::size_t numDims, std::size_t numClasses, std::size_t minLeafSize,
                                std::size_t maxDepth, std::vector<Node> nodes) {
    DecisionTree tree(minLeafSize, maxDepth);
    if (nodes.empty() || numClasses == 0)
      throw InvalidArgument("decision tree: empty node list");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node &n = nodes[i];
      if (n.isLeaf()) {
        if (static_cast<std::size_t>(n.probabilities.size()) != numClasses)
          throw InvalidArgument("decision tree: leaf " + std::to_string(i) + " has wrong class count");
      } else if (n.feature >= numDims || n.left <= i || n.right <= i || n.left >= nodes.size() ||
                 n.right >= nodes.size()) {
        throw InvalidArgument("decision tree: malformed split node " + std::to_string(i));
      }
    }
    tree.numDims_ = numDims;
    tree.numClasses_ = numClasses;
    tree.nodes_ = std::move(nodes);
    return tree;
  }

  void train(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses);

  std::size_t classify(const Eigen::Ref<const Vector<Scalar>> &point) const {
    const Node &leaf = leafFor(point);
    Eigen::Index best = 0;
    leaf.probabilities.maxCoeff(&best); // first maximum, i.e. lowest index on ties
    return static_cast<std::size_t>(best);
  }

  void classify(const DataMatrix<Scalar> &data, LabelRow &predictions) const {
    requireTrained();
    predictions.resize(data.cols());
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      predictions(j) = classify(data.col(j));
  }

  const VectorXd &probabilities(const Eigen::Ref<const Vector<Scalar>> &point) const {
    return leafFor(point).probabilities;
  }

  bool trained() const noexcept { return !nodes_.empty(); }
  std::size_t numClasses() const noexcept { return numClasses_; }
  std::size_t numDims() const noexcept { return numDims_; }
  std::size_t minLeafSize() const noexcept { return minLeafSize_; }
  std::size_t maxDepth() const noexcept { return maxDepth_; }
  const std::vector<Node> &nodes() const noexcept { return nodes_; }

  std::size_t numLeaves() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node &n) { return n.isLeaf(); }));
  }

  /// Edges on the longest root-to-leaf path.
  std::size_t depth() const {
    requireTrained();
    std::vector<std::size_t> d(nodes_.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      deepest = std::max(deepest, d[i]);
      if (!nodes_[i].isLeaf())
        d[nodes_[i].left] = d[nodes_[i].right] = d[i] + 1;
    }
    return deepest;
  }

private:
  void requireTrained() const {
    if (nodes_.empty())
      throw NotTrained();
  }

  const Node &leafFor(const Eigen::Ref<const Vector<Scalar>> &point) const {
    requireTrained();
    detail::check_point(point.size(), numDims_);
    std::size_t id = 0;
    while (!nodes_[id].isLeaf()) {
      const Node &n = nodes_[id];
      id = point(static_cast<Eigen::Index>(n.feature)) < n.threshold ? n.left : n.right;
    }
    return nodes_[id];
  }

  std::size_t minLeafSize_;
  std::size_t maxDepth_;
  std::size_t numDims_ = 0;
  std::size_t numClasses_ = 0;
  std::vector<Node> nodes_;
};

namespace detail {

// Training workspace: for every feature, the node's points sorted by that
// feature, stored as parallel value/index arrays. A node owns the same range
// [begin, end) in every feature's arrays; splitting stably partitions each
// range so both children stay sorted.
template <typename Scalar>
class TreeGrower {
public:
  TreeGrower(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses, std::size_t minLeafSize,
             std::size_t maxDepth)
      : numDims_(static_cast<std::size_t>(data.rows())), numPoints_(static_cast<std::size_t>(data.cols())),
        numClasses_(numClasses), minLeafSize_(minLeafSize), maxDepth_(maxDepth), labels_(numPoints_),
        goesLeft_(numPoints_, 0), values_(numDims_), order_(numDims_) {
    if (numPoints_ > std::numeric_limits<std::uint32_t>::max())
      throw InvalidArgument("decision tree: too many points");
    for (std::size_t i = 0; i < numPoints_; ++i)
      labels_[i] = static_cast<std::uint32_t>(labels(static_cast<Eigen::Index>(i)));
    for (std::size_t f = 0; f < numDims_; ++f) {
      auto &idx = order_[f];
      idx.resize(numPoints_);
      std::iota(idx.begin(), idx.end(), std::uint32_t{0});
      const auto fi = static_cast<Eigen::Index>(f);
      std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        const Scalar va = data(fi, a);
        const Scalar vb = data(fi, b);
        return va < vb || (va == vb && a < b);
      });
      auto &vals = values_[f];
      vals.resize(numPoints_);
      for (std::size_t i = 0; i < numPoints_; ++i)
        vals[i] = data(fi, idx[i]);
    }
    scratchValues_.resize(numPoints_);
    scratchOrder_.resize(numPoints_);
  }

  std::vector<typename DecisionTree<Scalar>::Node> grow() {
    using Node = typename DecisionTree<Scalar>::Node;
    std::vector<Node> nodes;
    struct Pending {
      std::size_t node, begin, end, depth;
    };
    nodes.emplace_back();
    std::vector<Pending> stack{{0, 0, numPoints_, 0}};
    std::vector<double> counts(numClasses_);
    while (!stack.empty()) {
      const Pending task = stack.back();
      stack.pop_back();

      std::fill(counts.begin(), counts.end(), 0.0);
      for (std::size_t i = task.begin; i < task.end; ++i)
        counts[labels_[order_[0][i]]] += 1.0;
      const std::size_t n = task.end - task.begin;
      const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
      const bool atDepthLimit = maxDepth_ > 0 && task.depth >= maxDepth_;

      Split best;
      if (!pure && !atDepthLimit && n >= 2 * minLeafSize_)
        best = findSplit(task.begin, task.end, counts);

      if (best.feature == npos) {
        VectorXd p(static_cast<Eigen::Index>(numClasses_));
        for (std::size_t c = 0; c < numClasses_; ++c)
          p(static_cast<Eigen::Index>(c)) = counts[c] / static_cast<double>(n);
        nodes[task.node].probabilities = std::move(p);
        continue;
      }

      partition(task.begin, task.end, best);
      const std::size_t left = nodes.size();
      const std::size_t right = left + 1;
      nodes.emplace_back();
      nodes.emplace_back();
      Node &node = nodes[task.node];
      node.feature = best.feature;
      node.threshold = best.threshold;
      node.left = left;
      node.right = right;
      const std::size_t mid = task.begin + best.leftCount;
      stack.push_back({right, mid, task.end, task.depth + 1});
      stack.push_back({left, task.begin, mid, task.depth + 1});
    }
    return nodes;
  }

private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Split {
    std::size_t feature = npos;
    Scalar threshold = 0;
    std::size_t leftCount = 0;
    double gain = -std::numeric_limits<double>::infinity();
  };

  // Gini gain of a split given sum of squared class counts on each side:
  // G(parent) - (nl G(left) + nr G(right)) / n with G = 1 - sum(c^2) / m^2.
  static double gini_gain(double sumSq, double n, double sumSqLeft, double nl, double sumSqRight, double nr) {
    return (sumSqLeft / nl + sumSqRight / nr) / n - sumSq / (n * n);
  }

  Split findSplit(std::size_t begin, std::size_t end, const std::vector<double> &counts) {
    const double n = static_cast<double>(end - begin);
    double sumSq = 0;
    for (const double c : counts)
      sumSq += c * c;

    Split best;
    std::vector<double> left(numClasses_);
    for (std::size_t f = 0; f < numDims_; ++f) {
      const auto &vals = values_[f];
      const auto &idx = order_[f];
      if (vals[begin] == vals[end - 1])
        continue;
      std::fill(left.begin(), left.end(), 0.0);
      double sumSqLeft = 0;
      double sumSqRight = sumSq;
      for (std::size_t pos = begin; pos + 1 < end; ++pos) {
        const std::uint32_t y = labels_[idx[pos]];
        const double cl = left[y];
        const double cr = counts[y] - cl;
        sumSqLeft += 2 * cl + 1;
        sumSqRight -= 2 * cr - 1;
        left[y] = cl + 1;

        const std::size_t nl = pos - begin + 1;
        const std::size_t nr = end - begin - nl;
        if (nr < minLeafSize_)
          break;
        if (nl < minLeafSize_ || vals[pos] == vals[pos + 1])
          continue;
        const double gain = gini_gain(sumSq, n, sumSqLeft, double(nl), sumSqRight, double(nr));
        if (gain > best.gain) {
          best.gain = gain;
          best.feature = f;
          best.leftCount = nl;
          best.threshold = threshold_between(vals[pos], vals[pos + 1]);
        }
      }
    }
    return best;
  }

  // Midpoint, nudged to the upper value if rounding collapses it onto the lower
  // one, so that lower < threshold <= upper.
  static Scalar threshold_between(Scalar lower, Scalar upper) {
    const Scalar mid = lower + (upper - lower) / 2;
    return lower < mid ? mid : upper;
  }

  void partition(std::size_t begin, std::size_t end, const Split &split) {
    const auto &splitOrder = order_[split.feature];
    for (std::size_t i = begin; i < end; ++i)
      goesLeft_[splitOrder[i]] = i < begin + split.leftCount;
    for (std::size_t f = 0; f < numDims_; ++f) {
      if (f == split.feature)
        continue;
      auto &vals = values_[f];
      auto &idx = order_[f];
      std::size_t l = begin;
      std::size_t r = 0;
      for (std::size_t i = begin; i < end; ++i) {
        if (goesLeft_[idx[i]]) {
          vals[l] = vals[i];
          idx[l] = idx[i];
          ++l;
        } else {
          scratchValues_[r] = vals[i];
          scratchOrder_[r] = idx[i];
          ++r;
        }
      }
      std::copy_n(scratchValues_.begin(), r, vals.begin() + static_cast<std::ptrdiff_t>(l));
      std::copy_n(scratchOrder_.begin(), r, idx.begin() + static_cast<std::ptrdiff_t>(l));
    }
  }

  std::size_t numDims_;
  std::size_t numPoints_;
  std::size_t numClasses_;
  std::size_t minLeafSize_;
  std::size_t maxDepth_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::uint8_t> goesLeft_;
  std::vector<std::vector<Scalar>> values_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<Scalar> scratchValues_;
  std::vector<std::uint32_t> scratchOrder_;
};

} // namespace detail

template <typename Scalar>
void DecisionTree<Scalar>::train(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses) {
  detail::check_training_set(data, labels, numClasses);
  detail::TreeGrower<Scalar> grower(data, labels, numClasses, minLeafSize_, maxDepth_);
  nodes_ = grower.grow();
  numDims_ = static_cast<std::size_t>(data.rows());
  numClasses_ = numClasses;
}

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_DECISION_TREE_HPP
