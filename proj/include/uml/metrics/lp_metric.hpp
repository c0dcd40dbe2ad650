#ifndef UML_METRICS_LP_METRIC_HPP
#define UML_METRICS_LP_METRIC_HPP

#include "uml/core/error.hpp"
#include "uml/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>

namespace uml::metrics {

/// A distance policy: anything with `evaluate(a, b)` over two equal-length points.
template <typename M>
concept Metric = requires(const M &m, const VectorXd &a) {
  { m.evaluate(a, a) } -> std::convertible_to<double>;
};

/// A metric that can also lower-bound the distance from a point to any point
/// inside an axis-aligned box. Tree searches prune only with such metrics.
template <typename M>
concept BoxBoundedMetric = Metric<M> && requires(const M &m, const VectorXd &a) {
  { m.minDistanceToBox(a, a, a) } -> std::convertible_to<double>;
};

namespace detail {

template <typename A, typename B>
void check_dims(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  if (a.size() != b.size())
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
}

// Both point-to-point distances and box bounds go through these accumulators
// with the same summation order, which keeps the bound <= every distance it
// bounds after rounding.
template <typename Scalar, typename GapFn>
Scalar accumulate_power(Eigen::Index n, double p, GapFn gap) {
  Scalar acc = 0;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i)
      acc += gap(i);
    return acc;
  }
  if (p == 2.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar g = gap(i);
      acc += g * g;
    }
    return std::sqrt(acc);
  }
  if (std::isinf(p)) {
    for (Eigen::Index i = 0; i < n; ++i)
      acc = std::max(acc, gap(i));
    return acc;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    acc += std::pow(gap(i), static_cast<Scalar>(p));
  return std::pow(acc, static_cast<Scalar>(1.0 / p));
}

template <typename A, typename B>
typename A::Scalar lp_evaluate(double p, const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  check_dims(a, b);
  using Scalar = typename A::Scalar;
  return accumulate_power<Scalar>(a.size(), p, [&](Eigen::Index i) { return std::abs(a(i) - b(i)); });
}

template <typename Q, typename L, typename H>
typename Q::Scalar lp_box_bound(double p, const Eigen::MatrixBase<Q> &q, const Eigen::MatrixBase<L> &lo,
                                const Eigen::MatrixBase<H> &hi) {
  check_dims(q, lo);
  check_dims(q, hi);
  using Scalar = typename Q::Scalar;
  return accumulate_power<Scalar>(q.size(), p, [&](Eigen::Index i) -> Scalar {
    if (q(i) < lo(i))
      return lo(i) - q(i);
    if (q(i) > hi(i))
      return q(i) - hi(i);
    return Scalar(0);
  });
}

} // namespace detail

inline constexpr int kInfinityPower = std::numeric_limits<int>::max();

/// Compile-time Lp metric. Power == kInfinityPower is the Chebyshev (max) distance.
template <int Power>
struct PowerMetric {
  static_assert(Power >= 1, "Lp metrics require p >= 1");

  static constexpr double power() {
    return Power == kInfinityPower ? std::numeric_limits<double>::infinity() : double(Power);
  }

  template <typename A, typename B>
  typename A::Scalar evaluate(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) const {
    return detail::lp_evaluate(power(), a, b);
  }

  template <typename Q, typename L, typename H>
  typename Q::Scalar minDistanceToBox(const Eigen::MatrixBase<Q> &q, const Eigen::MatrixBase<L> &lo,
                                      const Eigen::MatrixBase<H> &hi) const {
    return detail::lp_box_bound(power(), q, lo, hi);
  }
};

using ManhattanDistance = PowerMetric<1>;
using EuclideanDistance = PowerMetric<2>;
using ChebyshevDistance = PowerMetric<kInfinityPower>;

/// Lp metric with the exponent chosen at run time; p may be +infinity.
class LpMetric {
public:
  explicit LpMetric(double p = 2.0) : p_(p) {
    if (!(p >= 1.0))
      throw InvalidArgument("Lp metric requires p >= 1, got " + std::to_string(p));
  }

  double p() const noexcept { return p_; }

  template <typename A, typename B>
  typename A::Scalar evaluate(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) const {
    return detail::lp_evaluate(p_, a, b);
  }

  template <typename Q, typename L, typename H>
  typename Q::Scalar minDistanceToBox(const Eigen::MatrixBase<Q> &q, const Eigen::MatrixBase<L> &lo,
                                      const Eigen::MatrixBase<H> &hi) const {
    return detail::lp_box_bound(p_, q, lo, hi);
  }

private:
  double p_;
};

template <typename A, typename B>
typename A::Scalar lp_distance(const LpMetric &m, const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  return m.evaluate(a, b);
}

} // namespace uml::metrics

#endif // UML_METRICS_LP_METRIC_HPP
