#ifndef UML_DATA_SPLIT_HPP
#define UML_DATA_SPLIT_HPP

#include "uml/core/error.hpp"
#include "uml/core/random.hpp"
#include "uml/core/types.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace uml::data {

template <typename Scalar>
struct SplitResult {
  DataMatrix<Scalar> trainData;
  DataMatrix<Scalar> testData;
  LabelRow trainLabels;
  LabelRow testLabels;
};

/// Number of test points for a given ratio: round half up of ratio * n.
inline std::size_t test_count(std::size_t numPoints, double testRatio) {
  const auto count = static_cast<std::size_t>(std::llround(testRatio * static_cast<double>(numPoints)));
  return count > numPoints ? numPoints : count;
}

/// Shuffles the points with a seeded Fisher-Yates permutation; the first
/// test_count() of the permutation form the test partition, in permuted order.
template <typename Derived>
SplitResult<typename Derived::Scalar> split(const Eigen::MatrixBase<Derived> &data, const LabelRow &labels,
                                            double testRatio, std::uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  if (static_cast<Eigen::Index>(labels.size()) != data.cols())
    throw InvalidArgument("split: " + std::to_string(labels.size()) + " labels for " +
                          std::to_string(data.cols()) + " points");
  if (!(testRatio >= 0.0 && testRatio <= 1.0))
    throw InvalidArgument("split: test ratio must lie in [0, 1]");

  const auto n = static_cast<std::size_t>(data.cols());
  const std::size_t numTest = test_count(n, testRatio);
  Rng rng(seed);
  const std::vector<std::size_t> order = shuffled_indices(n, rng);

  SplitResult<Scalar> out;
  out.testData.resize(data.rows(), static_cast<Eigen::Index>(numTest));
  out.testLabels.resize(static_cast<Eigen::Index>(numTest));
  out.trainData.resize(data.rows(), static_cast<Eigen::Index>(n - numTest));
  out.trainLabels.resize(static_cast<Eigen::Index>(n - numTest));
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    if (i < numTest) {
      const auto dst = static_cast<Eigen::Index>(i);
      out.testData.col(dst) = data.col(src);
      out.testLabels(dst) = labels(src);
    } else {
      const auto dst = static_cast<Eigen::Index>(i - numTest);
      out.trainData.col(dst) = data.col(src);
      out.trainLabels(dst) = labels(src);
    }
  }
  return out;
}

} // namespace uml::data

#endif // UML_DATA_SPLIT_HPP
