#ifndef UML_SPATIAL_NEIGHBOR_SEARCH_HPP
#define UML_SPATIAL_NEIGHBOR_SEARCH_HPP

#include "uml/core/error.hpp"
#include "uml/metrics/lp_metric.hpp"
#include "uml/spatial/kd_tree.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace uml::spatial {

/// k x numQueries results; column q holds the neighbors of query q, nearest first.
template <typename Scalar = double>
struct NeighborResult {
  Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic> indices;
  DataMatrix<Scalar> distances;
};

/// Per-query neighbor lists, each sorted by ascending point index.
template <typename Scalar = double>
struct RangeResult {
  std::vector<std::vector<std::size_t>> indices;
  std::vector<std::vector<Scalar>> distances;
};

/// Instrumentation: distance evaluations spent on each query.
struct SearchStats {
  std::vector<std::size_t> distanceEvaluations;
};

namespace detail {

template <typename Scalar>
struct Candidate {
  Scalar distance;
  std::size_t index;

  friend bool operator<(const Candidate &a, const Candidate &b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
  }
};

template <typename Scalar>
void check_queries(const DataMatrix<Scalar> &data, const DataMatrix<Scalar> &queries) {
  if (queries.rows() != data.rows())
    throw InvalidArgument("query dimension " + std::to_string(queries.rows()) + " does not match dataset dimension " +
                          std::to_string(data.rows()));
}

template <typename Scalar>
void check_k(const DataMatrix<Scalar> &data, std::size_t k) {
  if (k < 1 || k > static_cast<std::size_t>(data.cols()))
    throw InvalidArgument("k = " + std::to_string(k) + " is outside [1, " + std::to_string(data.cols()) + "]");
}

// Bounded sorted list of the best k candidates seen so far.
template <typename Scalar>
class CandidateList {
public:
  explicit CandidateList(std::size_t k) : k_(k) { items_.reserve(k + 1); }

  bool full() const noexcept { return items_.size() == k_; }
  const Candidate<Scalar> &worst() const noexcept { return items_.back(); }

  void offer(const Candidate<Scalar> &c) {
    if (full() && !(c < worst()))
      return;
    items_.insert(std::upper_bound(items_.begin(), items_.end(), c), c);
    if (items_.size() > k_)
      items_.pop_back();
  }

  const std::vector<Candidate<Scalar>> &items() const noexcept { return items_; }

private:
  std::size_t k_;
  std::vector<Candidate<Scalar>> items_;
};

template <typename Scalar, typename MetricType, typename Query>
Scalar node_bound(const MetricType &metric, const Query &query, const typename KdTree<Scalar>::Node &node) {
  if constexpr (metrics::BoxBoundedMetric<MetricType>)
    return metric.minDistanceToBox(query, node.boundMin, node.boundMax);
  else
    return Scalar(0);
}

template <typename Scalar, typename MetricType, typename Query>
void knn_visit(const KdTree<Scalar> &tree, std::size_t nodeId, const Query &query, const MetricType &metric,
               CandidateList<Scalar> &best, std::size_t &evaluations) {
  const auto &node = tree.nodes()[nodeId];
  if (node.isLeaf()) {
    for (const std::size_t idx : tree.pointIndices(node)) {
      ++evaluations;
      best.offer({static_cast<Scalar>(metric.evaluate(query, tree.dataset().col(static_cast<Eigen::Index>(idx)))),
                  idx});
    }
    return;
  }
  const Scalar leftBound = node_bound<Scalar>(metric, query, tree.nodes()[node.left]);
  const Scalar rightBound = node_bound<Scalar>(metric, query, tree.nodes()[node.right]);
  const bool leftFirst = leftBound <= rightBound;
  const std::pair<std::size_t, Scalar> order[2] = {
      leftFirst ? std::pair{node.left, leftBound} : std::pair{node.right, rightBound},
      leftFirst ? std::pair{node.right, rightBound} : std::pair{node.left, leftBound}};
  for (const auto &[child, bound] : order) {
    // A bound equal to the current worst distance can still hide an equally
    // distant point with a smaller index, so only strictly larger bounds prune.
    if (best.full() && bound > best.worst().distance)
      continue;
    knn_visit(tree, child, query, metric, best, evaluations);
  }
}

template <typename Scalar, typename MetricType, typename Query>
void range_visit(const KdTree<Scalar> &tree, std::size_t nodeId, const Query &query, const MetricType &metric,
                 Scalar radius, std::vector<Candidate<Scalar>> &found) {
  const auto &node = tree.nodes()[nodeId];
  if (node_bound<Scalar>(metric, query, node) > radius)
    return;
  if (node.isLeaf()) {
    for (const std::size_t idx : tree.pointIndices(node)) {
      const auto d = static_cast<Scalar>(metric.evaluate(query, tree.dataset().col(static_cast<Eigen::Index>(idx))));
      if (d <= radius)
        found.push_back({d, idx});
    }
    return;
  }
  range_visit(tree, node.left, query, metric, radius, found);
  range_visit(tree, node.right, query, metric, radius, found);
}

} // namespace detail

/// Exact k-nearest-neighbor search by single-tree traversal. Ties at equal
/// distance resolve to the smaller point index. Subtrees are pruned with the
/// metric's box bound when it has one; other metrics visit every leaf.
template <typename Scalar, typename MetricType = metrics::EuclideanDistance>
NeighborResult<Scalar> knn_search(const KdTree<Scalar> &tree, const DataMatrix<Scalar> &queries, std::size_t k,
                                  const MetricType &metric = MetricType{}, SearchStats *stats = nullptr) {
  static_assert(metrics::Metric<MetricType>, "knn_search requires a Metric policy");
  detail::check_queries(tree.dataset(), queries);
  detail::check_k(tree.dataset(), k);

  NeighborResult<Scalar> out;
  const auto K = static_cast<Eigen::Index>(k);
  out.indices.resize(K, queries.cols());
  out.distances.resize(K, queries.cols());
  if (stats)
    stats->distanceEvaluations.assign(static_cast<std::size_t>(queries.cols()), 0);

  for (Eigen::Index q = 0; q < queries.cols(); ++q) {
    detail::CandidateList<Scalar> best(k);
    std::size_t evaluations = 0;
    detail::knn_visit(tree, 0, queries.col(q), metric, best, evaluations);
    for (Eigen::Index i = 0; i < K; ++i) {
      out.indices(i, q) = best.items()[static_cast<std::size_t>(i)].index;
      out.distances(i, q) = best.items()[static_cast<std::size_t>(i)].distance;
    }
    if (stats)
      stats->distanceEvaluations[static_cast<std::size_t>(q)] = evaluations;
  }
  return out;
}

/// Every dataset point within `radius` (inclusive) of each query.
template <typename Scalar, typename MetricType = metrics::EuclideanDistance>
RangeResult<Scalar> range_search(const KdTree<Scalar> &tree, const DataMatrix<Scalar> &queries, Scalar radius,
                                 const MetricType &metric = MetricType{}) {
  static_assert(metrics::Metric<MetricType>, "range_search requires a Metric policy");
  detail::check_queries(tree.dataset(), queries);
  if (!(radius > 0))
    throw InvalidArgument("range search radius must be positive");

  RangeResult<Scalar> out;
  out.indices.resize(static_cast<std::size_t>(queries.cols()));
  out.distances.resize(static_cast<std::size_t>(queries.cols()));
  for (Eigen::Index q = 0; q < queries.cols(); ++q) {
    std::vector<detail::Candidate<Scalar>> found;
    detail::range_visit(tree, 0, queries.col(q), metric, radius, found);
    std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) { return a.index < b.index; });
    auto &idx = out.indices[static_cast<std::size_t>(q)];
    auto &dist = out.distances[static_cast<std::size_t>(q)];
    for (const auto &c : found) {
      idx.push_back(c.index);
      dist.push_back(c.distance);
    }
  }
  return out;
}

/// Exhaustive scan; the reference answer for knn_search.
template <typename Scalar, typename MetricType = metrics::EuclideanDistance>
NeighborResult<Scalar> brute_force_knn(const DataMatrix<Scalar> &data, const DataMatrix<Scalar> &queries,
                                       std::size_t k, const MetricType &metric = MetricType{}) {
  static_assert(metrics::Metric<MetricType>, "brute_force_knn requires a Metric policy");
  if (data.cols() == 0)
    throw InvalidArgument("brute_force_knn: empty dataset");
  detail::check_queries(data, queries);
  detail::check_k(data, k);

  NeighborResult<Scalar> out;
  const auto K = static_cast<Eigen::Index>(k);
  out.indices.resize(K, queries.cols());
  out.distances.resize(K, queries.cols());
  std::vector<detail::Candidate<Scalar>> all(static_cast<std::size_t>(data.cols()));
  for (Eigen::Index q = 0; q < queries.cols(); ++q) {
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      all[static_cast<std::size_t>(j)] = {static_cast<Scalar>(metric.evaluate(queries.col(q), data.col(j))),
                                          static_cast<std::size_t>(j)};
    std::partial_sort(all.begin(), all.begin() + K, all.end());
    for (Eigen::Index i = 0; i < K; ++i) {
      out.indices(i, q) = all[static_cast<std::size_t>(i)].index;
      out.distances(i, q) = all[static_cast<std::size_t>(i)].distance;
    }
  }
  return out;
}

} // namespace uml::spatial

#endif // UML_SPATIAL_NEIGHBOR_SEARCH_HPP
