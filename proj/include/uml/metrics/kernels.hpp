#ifndef UML_METRICS_KERNELS_HPP
#define UML_METRICS_KERNELS_HPP

#include "uml/core/error.hpp"
#include "uml/metrics/lp_metric.hpp"

#include <cmath>
#include <concepts>
#include <string>

namespace uml::metrics {

template <typename K>
concept Kernel = requires(const K &k, const VectorXd &a) {
  { k.evaluate(a, a) } -> std::convertible_to<double>;
};

/// k(a, b) = exp(-|a - b|^2 / (2 bandwidth^2))
class GaussianKernel {
public:
  explicit GaussianKernel(double bandwidth = 1.0) : bandwidth_(bandwidth) {
    if (!(bandwidth > 0.0))
      throw InvalidArgument("Gaussian kernel bandwidth must be positive");
  }

  double bandwidth() const noexcept { return bandwidth_; }

  template <typename A, typename B>
  typename A::Scalar evaluate(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) const {
    detail::check_dims(a, b);
    using Scalar = typename A::Scalar;
    const Scalar sq = (a - b).squaredNorm();
    return std::exp(-sq / static_cast<Scalar>(2 * bandwidth_ * bandwidth_));
  }

private:
  double bandwidth_;
};

struct LinearKernel {
  template <typename A, typename B>
  typename A::Scalar evaluate(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) const {
    detail::check_dims(a, b);
    return a.dot(b);
  }
};

/// k(a, b) = (a.b + offset)^degree
class PolynomialKernel {
public:
  explicit PolynomialKernel(int degree = 2, double offset = 0.0) : degree_(degree), offset_(offset) {
    if (degree < 1)
      throw InvalidArgument("polynomial kernel degree must be >= 1");
    if (!(offset >= 0.0))
      throw InvalidArgument("polynomial kernel offset must be >= 0");
  }

  int degree() const noexcept { return degree_; }
  double offset() const noexcept { return offset_; }

  template <typename A, typename B>
  typename A::Scalar evaluate(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) const {
    detail::check_dims(a, b);
    using Scalar = typename A::Scalar;
    const Scalar base = a.dot(b) + static_cast<Scalar>(offset_);
    Scalar out = 1;
    for (int i = 0; i < degree_; ++i)
      out *= base;
    return out;
  }

private:
  int degree_;
  double offset_;
};

template <typename A, typename B>
typename A::Scalar gaussian_kernel(const GaussianKernel &k, const Eigen::MatrixBase<A> &a,
                                   const Eigen::MatrixBase<B> &b) {
  return k.evaluate(a, b);
}

template <typename A, typename B>
typename A::Scalar linear_kernel(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  return LinearKernel{}.evaluate(a, b);
}

template <typename A, typename B>
typename A::Scalar polynomial_kernel(const PolynomialKernel &k, const Eigen::MatrixBase<A> &a,
                                     const Eigen::MatrixBase<B> &b) {
  return k.evaluate(a, b);
}

} // namespace uml::metrics

#endif // UML_METRICS_KERNELS_HPP
