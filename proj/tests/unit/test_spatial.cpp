#include "doctest.h"

#include "common/synthetic.hpp"
#include "uml/metrics/lp_metric.hpp"
#include "uml/spatial/kd_tree.hpp"
#include "uml/spatial/neighbor_search.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace uml;
using namespace uml::spatial;
using uml::metrics::ChebyshevDistance;
using uml::metrics::EuclideanDistance;
using uml::metrics::LpMetric;
using uml::metrics::ManhattanDistance;

namespace {

// A metric without a box bound: searches must fall back to visiting every leaf.
struct UnboundedEuclidean {
  template <typename A, typename B>
  double evaluate(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) const {
    return EuclideanDistance{}.evaluate(a, b);
  }
};
static_assert(metrics::Metric<UnboundedEuclidean> && !metrics::BoxBoundedMetric<UnboundedEuclidean>);

// Independent oracle: sort every (distance, index) pair with std::sort.
template <typename M>
void sort_all_knn(const Matrix &data, const Eigen::Ref<const VectorXd> &q, std::size_t k, const M &metric,
                  std::vector<std::size_t> &idx, std::vector<double> &dist) {
  std::vector<std::pair<double, std::size_t>> all;
  for (Eigen::Index j = 0; j < data.cols(); ++j)
    all.emplace_back(metric.evaluate(q, data.col(j)), static_cast<std::size_t>(j));
  std::sort(all.begin(), all.end());
  idx.clear();
  dist.clear();
  for (std::size_t i = 0; i < k; ++i) {
    idx.push_back(all[i].second);
    dist.push_back(all[i].first);
  }
}

void audit(const KdTree<> &tree) {
  const Matrix &data = tree.dataset();
  std::vector<int> seen(static_cast<std::size_t>(data.cols()), 0);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto &node = tree.nodes()[stack.back()];
    stack.pop_back();
    CHECK((node.boundMin.array() <= node.boundMax.array()).all());
    for (const std::size_t idx : tree.pointIndices(node)) {
      const auto p = data.col(static_cast<Eigen::Index>(idx));
      REQUIRE((p.array() >= node.boundMin.array()).all());
      REQUIRE((p.array() <= node.boundMax.array()).all());
    }
    if (node.isLeaf()) {
      CHECK(node.count >= 1);
      CHECK(node.count <= tree.leafSize());
      for (const std::size_t idx : tree.pointIndices(node))
        ++seen[idx];
      continue;
    }
    const auto &left = tree.nodes()[node.left];
    const auto &right = tree.nodes()[node.right];
    CHECK(left.count + right.count == node.count);
    for (const std::size_t idx : tree.pointIndices(left))
      CHECK(data(node.splitDim, static_cast<Eigen::Index>(idx)) < node.splitValue);
    for (const std::size_t idx : tree.pointIndices(right))
      CHECK(data(node.splitDim, static_cast<Eigen::Index>(idx)) >= node.splitValue);
    stack.push_back(node.left);
    stack.push_back(node.right);
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

template <typename M>
void check_against_oracles(const Matrix &data, const Matrix &queries, std::size_t k, const M &metric,
                           std::size_t leafSize = 20) {
  const KdTree<> tree(data, leafSize);
  SearchStats stats;
  const auto fast = knn_search(tree, queries, k, metric, &stats);
  const auto slow = brute_force_knn(data, queries, k, metric);
  CHECK(fast.indices == slow.indices);
  CHECK((fast.distances - slow.distances).cwiseAbs().maxCoeff() <= 1e-12);
  std::vector<std::size_t> idx;
  std::vector<double> dist;
  for (Eigen::Index q = 0; q < queries.cols(); ++q) {
    sort_all_knn(data, queries.col(q), k, metric, idx, dist);
    for (std::size_t i = 0; i < k; ++i) {
      REQUIRE(slow.indices(static_cast<Eigen::Index>(i), q) == idx[i]);
      REQUIRE(slow.distances(static_cast<Eigen::Index>(i), q) == dist[i]);
    }
    CHECK(stats.distanceEvaluations[static_cast<std::size_t>(q)] <= static_cast<std::size_t>(data.cols()));
  }
}

} // namespace

TEST_CASE("kd-tree over a single point or fewer points than a leaf") {
  const Matrix one = Matrix::Constant(3, 1, 2.5);
  const KdTree<> t1(one, 20);
  CHECK(t1.nodes().size() == 1);
  CHECK(t1.root().isLeaf());
  CHECK(t1.pointIndices(t1.root())[0] == 0);

  const Matrix few = testing::uniform_points(2, 15, 1);
  const KdTree<> t2(few, 20);
  CHECK(t2.root().isLeaf());
  CHECK(t2.root().count == 15);
}

TEST_CASE("kd-tree structural audit") {
  for (const std::size_t leafSize : {1, 5, 20}) {
    const Matrix data = testing::uniform_points(3, 1000, 77);
    const KdTree<> tree(data, leafSize);
    audit(tree);
  }
  // Heavy duplication in a coordinate forces the cut off a run of equal values.
  Matrix dup = testing::uniform_points(2, 300, 4);
  for (Eigen::Index j = 0; j < dup.cols(); ++j)
    dup(0, j) = std::floor(dup(0, j) * 3);
  const KdTree<> dupTree(dup, 4);
  audit(dupTree);
}

TEST_CASE("kd-tree keeps identical points together") {
  const Matrix same = Matrix::Constant(2, 50, 1.0);
  const KdTree<> tree(same, 5);
  CHECK(tree.root().isLeaf());
  CHECK(tree.root().count == 50);
}

TEST_CASE("kd-tree construction is deterministic") {
  const Matrix data = testing::uniform_points(4, 500, 8);
  const KdTree<> a(data, 10), b(data, 10);
  CHECK(a.indices() == b.indices());
  REQUIRE(a.nodes().size() == b.nodes().size());
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    CHECK(a.nodes()[i].splitDim == b.nodes()[i].splitDim);
    CHECK(a.nodes()[i].splitValue == b.nodes()[i].splitValue);
  }
}

TEST_CASE("kd-tree rejects empty data and zero leaf size") {
  const Matrix empty(2, 0);
  CHECK_THROWS_AS(KdTree<>{empty}, InvalidArgument);
  const Matrix data = Matrix::Zero(2, 3);
  CHECK_THROWS_AS((KdTree<>{data, 0}), InvalidArgument);
}

TEST_CASE("knn small examples") {
  const Matrix data = (Matrix(1, 3) << 0, 1, 10).finished();
  const KdTree<> tree(data, 1);
  const Matrix q = (Matrix(1, 1) << 0.4).finished();
  const auto r = knn_search(tree, q, 1);
  CHECK(r.indices(0, 0) == 0);
  CHECK(r.distances(0, 0) == doctest::Approx(0.4).epsilon(1e-15));

  const auto all = knn_search(tree, q, 3);
  CHECK(all.indices.col(0) == (Eigen::Matrix<std::size_t, 3, 1>() << 0, 1, 2).finished());
  CHECK(std::is_sorted(all.distances.data(), all.distances.data() + 3));

  const Matrix single = (Matrix(2, 1) << 3, 4).finished();
  const auto s = brute_force_knn(single, testing::uniform_points(2, 4, 2), 1);
  CHECK((s.indices.array() == 0).all());

  const Matrix pts = testing::uniform_points(3, 40, 12);
  const auto self = brute_force_knn(pts, Matrix(pts.col(17)), 2);
  CHECK(self.indices(0, 0) == 17);
  CHECK(self.distances(0, 0) == 0.0);
}

TEST_CASE("knn ties resolve to the smaller index") {
  // Points at -1 and +1 are equidistant from 0; so are 2 and -2.
  const Matrix data = (Matrix(1, 5) << 2, 1, -1, -2, 5).finished();
  const Matrix q = Matrix::Zero(1, 1);
  for (const std::size_t leafSize : {1, 2, 20}) {
    const KdTree<> tree(data, leafSize);
    const auto r = knn_search(tree, q, 4);
    CHECK(r.indices.col(0) == (Eigen::Matrix<std::size_t, 4, 1>() << 1, 2, 0, 3).finished());
  }
}

TEST_CASE("knn matches brute force on randomized suites for every shipped metric") {
  const Matrix data = testing::uniform_points(5, 200, 300);
  const Matrix queries = testing::uniform_points(5, 50, 301);
  check_against_oracles(data, queries, 10, EuclideanDistance{});
  check_against_oracles(data, queries, 10, ManhattanDistance{});
  check_against_oracles(data, queries, 10, ChebyshevDistance{});
  check_against_oracles(data, queries, 10, LpMetric(3.0));
  check_against_oracles(data, queries, 10, UnboundedEuclidean{});

  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + uniform_index(rng, 60));
    const auto dims = static_cast<Eigen::Index>(1 + uniform_index(rng, 4));
    const std::size_t k = 1 + uniform_index(rng, static_cast<std::size_t>(n));
    const Matrix d = testing::uniform_points(dims, n, rng());
    const Matrix q = testing::uniform_points(dims, 3, rng());
    check_against_oracles(d, q, k, EuclideanDistance{}, 1 + uniform_index(rng, 8));
  }
}

TEST_CASE("knn prunes on clustered data") {
  const Matrix data = testing::uniform_points(2, 2000, 5);
  const KdTree<> tree(data, 10);
  SearchStats stats;
  knn_search(tree, testing::uniform_points(2, 20, 6), 3, EuclideanDistance{}, &stats);
  const std::size_t total = std::accumulate(stats.distanceEvaluations.begin(), stats.distanceEvaluations.end(),
                                            std::size_t{0});
  CHECK(total < 20 * 2000 / 10);

  SearchStats unpruned;
  knn_search(tree, testing::uniform_points(2, 5, 6), 3, UnboundedEuclidean{}, &unpruned);
  CHECK(unpruned.distanceEvaluations == std::vector<std::size_t>(5, 2000));
}

TEST_CASE("knn argument checks") {
  const Matrix data = testing::uniform_points(3, 10, 1);
  const KdTree<> tree(data);
  CHECK_THROWS_AS(knn_search(tree, testing::uniform_points(3, 2, 2), 0), InvalidArgument);
  CHECK_THROWS_AS(knn_search(tree, testing::uniform_points(3, 2, 2), 11), InvalidArgument);
  CHECK_THROWS_AS(knn_search(tree, testing::uniform_points(2, 2, 2), 1), InvalidArgument);
  CHECK_THROWS_AS(brute_force_knn(data, testing::uniform_points(3, 2, 2), 11), InvalidArgument);
}

TEST_CASE("range search") {
  const Matrix data = testing::uniform_points(3, 200, 41);
  const KdTree<> tree(data, 8);

  // Off-dataset query with a radius far below any distance to it.
  const Matrix far = Matrix::Constant(3, 1, 50.0);
  CHECK(range_search(tree, far, 1.0).indices[0].empty());

  // Radius covering everything.
  const auto everything = range_search(tree, Matrix(Matrix::Constant(3, 1, 0.5)), 10.0);
  std::vector<std::size_t> expected(200);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  CHECK(everything.indices[0] == expected);

  // Median pairwise distance against an exhaustive filter.
  std::vector<double> pairwise;
  for (Eigen::Index i = 0; i < data.cols(); ++i)
    for (Eigen::Index j = i + 1; j < data.cols(); ++j)
      pairwise.push_back((data.col(i) - data.col(j)).norm());
  std::nth_element(pairwise.begin(), pairwise.begin() + static_cast<std::ptrdiff_t>(pairwise.size() / 2),
                   pairwise.end());
  const double radius = pairwise[pairwise.size() / 2];
  for (const auto &metricCase : {0, 1}) {
    const auto r = metricCase == 0 ? range_search(tree, data, radius, EuclideanDistance{})
                                   : range_search(tree, data, radius, UnboundedEuclidean{});
    for (Eigen::Index q = 0; q < data.cols(); ++q) {
      std::vector<std::size_t> brute;
      for (Eigen::Index j = 0; j < data.cols(); ++j)
        if (EuclideanDistance{}.evaluate(data.col(q), data.col(j)) <= radius)
          brute.push_back(static_cast<std::size_t>(j));
      REQUIRE(r.indices[static_cast<std::size_t>(q)] == brute);
      for (std::size_t i = 0; i < brute.size(); ++i)
        CHECK(r.distances[static_cast<std::size_t>(q)][i] ==
              EuclideanDistance{}.evaluate(data.col(q), data.col(static_cast<Eigen::Index>(brute[i]))));
    }
  }

  CHECK_THROWS_AS(range_search(tree, far, 0.0), InvalidArgument);
  CHECK_THROWS_AS(range_search(tree, Matrix(2, 1), 1.0), InvalidArgument);
}
