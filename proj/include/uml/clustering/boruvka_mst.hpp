#ifndef UML_CLUSTERING_BORUVKA_MST_HPP
#define UML_CLUSTERING_BORUVKA_MST_HPP

#include "uml/core/error.hpp"
#include "uml/core/types.hpp"
#include "uml/metrics/lp_metric.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

namespace uml::clustering {

template <typename Scalar = double>
struct Edge {
  std::size_t a = 0; ///< smaller endpoint
  std::size_t b = 0;
  Scalar weight = 0;

  /// Strict total order: weight, then (a, b).
  friend bool operator<(const Edge &x, const Edge &y) {
    return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
  }
  friend bool operator==(const Edge &, const Edge &) = default;
};

template <typename Scalar = double>
struct MstResult {
  std::vector<Edge<Scalar>> edges; ///< sorted by the Edge order
  Scalar totalWeight = 0;
};

namespace detail {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y)
      return false;
    if (rank_[x] < rank_[y])
      std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y])
      ++rank_[x];
    return true;
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

} // namespace detail

/// Minimum spanning tree of the complete graph on the columns of `data`, with
/// edge weights given by `metric`. Each Boruvka round adds every component's
/// cheapest outgoing edge under the Edge order, which makes the tree unique
/// even with repeated distances.
template <typename Scalar, typename MetricType = metrics::EuclideanDistance>
MstResult<Scalar> boruvka_mst(const DataMatrix<Scalar> &data, const MetricType &metric = MetricType{}) {
  static_assert(metrics::Metric<MetricType>, "boruvka_mst requires a Metric policy");
  const auto n = static_cast<std::size_t>(data.cols());
  if (n == 0)
    throw InvalidArgument("boruvka_mst: empty dataset");

  MstResult<Scalar> out;
  detail::DisjointSets sets(n);
  std::size_t components = n;
  std::vector<Edge<Scalar>> cheapest(n);
  std::vector<bool> found(n);
  std::vector<std::size_t> root(n);
  while (components > 1) {
    std::fill(found.begin(), found.end(), false);
    for (std::size_t i = 0; i < n; ++i)
      root[i] = sets.find(i);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (root[i] == root[j])
          continue;
        const Edge<Scalar> e{i, j,
                             static_cast<Scalar>(metric.evaluate(data.col(static_cast<Eigen::Index>(i)),
                                                                 data.col(static_cast<Eigen::Index>(j))))};
        for (const std::size_t r : {root[i], root[j]}) {
          if (!found[r] || e < cheapest[r]) {
            cheapest[r] = e;
            found[r] = true;
          }
        }
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (found[r] && sets.unite(cheapest[r].a, cheapest[r].b)) {
        out.edges.push_back(cheapest[r]);
        --components;
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  for (const auto &e : out.edges)
    out.totalWeight += e.weight;
  return out;
}

} // namespace uml::clustering

#endif // UML_CLUSTERING_BORUVKA_MST_HPP
