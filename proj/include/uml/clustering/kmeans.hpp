#ifndef UML_CLUSTERING_KMEANS_HPP
#define UML_CLUSTERING_KMEANS_HPP

#include "uml/core/error.hpp"
#include "uml/core/random.hpp"
#include "uml/core/types.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace uml::clustering {

template <typename Scalar = double>
struct KMeansResult {
  DataMatrix<Scalar> centroids; // dims x k
  std::vector<std::size_t> assignments;
  Scalar objective = 0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Objective after the initial assignment, then after every iteration.
  std::vector<Scalar> objectiveHistory;
};

namespace detail {

template <typename Scalar>
std::size_t nearest_centroid(const DataMatrix<Scalar> &centroids, const auto &point, Scalar &bestDistance) {
  std::size_t best = 0;
  bestDistance = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index c = 0; c < centroids.cols(); ++c) {
    const Scalar d = (centroids.col(c) - point).squaredNorm();
    if (d < bestDistance) {
      bestDistance = d;
      best = static_cast<std::size_t>(c);
    }
  }
  return best;
}

template <typename Scalar>
Scalar sum_of_squares(const DataMatrix<Scalar> &data, const DataMatrix<Scalar> &centroids,
                      const std::vector<std::size_t> &assignments) {
  Scalar total = 0;
  for (Eigen::Index j = 0; j < data.cols(); ++j)
    total += (data.col(j) - centroids.col(static_cast<Eigen::Index>(assignments[static_cast<std::size_t>(j)])))
                 .squaredNorm();
  return total;
}

} // namespace detail

/// Lloyd's algorithm from a seeded Forgy start (k distinct data points).
///
/// Iterates update-then-assign until no assignment changes or maxIterations is
/// spent. A cluster left empty by the update takes over the point farthest
/// from its current centroid, after which centroids are recomputed. Assignment
/// ties go to the lowest centroid index.
template <typename Scalar>
KMeansResult<Scalar> kmeans(const DataMatrix<Scalar> &data, std::size_t k, std::size_t maxIterations = 1000,
                            std::uint64_t seed = 42) {
  const auto n = static_cast<std::size_t>(data.cols());
  if (k < 1 || k > n)
    throw InvalidArgument("k-means: k = " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
  if (maxIterations == 0)
    throw InvalidArgument("k-means: iteration budget must be positive");

  KMeansResult<Scalar> out;
  const auto K = static_cast<Eigen::Index>(k);
  out.centroids.resize(data.rows(), K);
  {
    Rng rng(seed);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i)
      pool[i] = i;
    for (std::size_t c = 0; c < k; ++c) {
      std::swap(pool[c], pool[c + uniform_index(rng, n - c)]);
      out.centroids.col(static_cast<Eigen::Index>(c)) = data.col(static_cast<Eigen::Index>(pool[c]));
    }
  }

  out.assignments.assign(n, 0);
  auto assign = [&] {
    bool changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      Scalar d;
      const std::size_t c = detail::nearest_centroid(out.centroids, data.col(static_cast<Eigen::Index>(j)), d);
      changed = changed || c != out.assignments[j];
      out.assignments[j] = c;
    }
    return changed;
  };
  assign();
  out.objectiveHistory.push_back(detail::sum_of_squares(data, out.centroids, out.assignments));

  std::vector<std::size_t> counts(k);
  for (std::size_t it = 1; it <= maxIterations; ++it) {
    // Update step, repairing empty clusters first.
    std::fill(counts.begin(), counts.end(), 0);
    for (const std::size_t c : out.assignments)
      ++counts[c];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0)
        continue;
      std::size_t farthest = 0;
      Scalar farthestDistance = -1;
      for (std::size_t j = 0; j < n; ++j) {
        if (counts[out.assignments[j]] <= 1)
          continue;
        const Scalar d =
            (data.col(static_cast<Eigen::Index>(j)) - out.centroids.col(static_cast<Eigen::Index>(out.assignments[j])))
                .squaredNorm();
        if (d > farthestDistance) {
          farthestDistance = d;
          farthest = j;
        }
      }
      --counts[out.assignments[farthest]];
      out.assignments[farthest] = c;
      counts[c] = 1;
    }
    out.centroids.setZero();
    for (std::size_t j = 0; j < n; ++j)
      out.centroids.col(static_cast<Eigen::Index>(out.assignments[j])) += data.col(static_cast<Eigen::Index>(j));
    for (std::size_t c = 0; c < k; ++c)
      out.centroids.col(static_cast<Eigen::Index>(c)) /= static_cast<Scalar>(counts[c]);

    const bool changed = assign();
    out.iterations = it;
    out.objectiveHistory.push_back(detail::sum_of_squares(data, out.centroids, out.assignments));
    if (!changed) {
      out.converged = true;
      break;
    }
  }
  out.objective = out.objectiveHistory.back();
  return out;
}

} // namespace uml::clustering

#endif // UML_CLUSTERING_KMEANS_HPP
