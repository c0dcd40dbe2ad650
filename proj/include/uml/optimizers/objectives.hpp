#ifndef UML_OPTIMIZERS_OBJECTIVES_HPP
#define UML_OPTIMIZERS_OBJECTIVES_HPP

#include "uml/optimizers/function.hpp"

namespace uml::optim {

/// f(x) = |x|^2, separable into one term per coordinate.
template <typename ScalarT = double>
class Sphere {
public:
  using Scalar = ScalarT;

  explicit Sphere(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t numTerms() const noexcept { return dimension_; }

  Scalar evaluate(const Vector<Scalar> &x) const { return x.squaredNorm(); }
  void gradient(const Vector<Scalar> &x, Vector<Scalar> &g) const { g = 2 * x; }

  Scalar evaluateTerm(const Vector<Scalar> &x, std::size_t i) const {
    const Scalar xi = x(static_cast<Eigen::Index>(i));
    return xi * xi;
  }
  void gradientTerm(const Vector<Scalar> &x, std::size_t i, Vector<Scalar> &g) const {
    g.setZero(x.size());
    g(static_cast<Eigen::Index>(i)) = 2 * x(static_cast<Eigen::Index>(i));
  }

private:
  std::size_t dimension_;
};

/// f(x) = sum_i (x_i - c_i)^2 with one term per coordinate.
template <typename ScalarT = double>
class SeparableQuadratic {
public:
  using Scalar = ScalarT;

  explicit SeparableQuadratic(Vector<Scalar> center) : center_(std::move(center)) {}

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(center_.size()); }
  std::size_t numTerms() const noexcept { return dimension(); }
  const Vector<Scalar> &center() const noexcept { return center_; }

  Scalar evaluate(const Vector<Scalar> &x) const { return (x - center_).squaredNorm(); }
  void gradient(const Vector<Scalar> &x, Vector<Scalar> &g) const { g = 2 * (x - center_); }

  Scalar evaluateTerm(const Vector<Scalar> &x, std::size_t i) const {
    const auto k = static_cast<Eigen::Index>(i);
    const Scalar d = x(k) - center_(k);
    return d * d;
  }
  void gradientTerm(const Vector<Scalar> &x, std::size_t i, Vector<Scalar> &g) const {
    const auto k = static_cast<Eigen::Index>(i);
    g.setZero(x.size());
    g(k) = 2 * (x(k) - center_(k));
  }

private:
  Vector<Scalar> center_;
};

/// 2-D Rosenbrock: (a - x)^2 + b (y - x^2)^2, minimum 0 at (a, a^2).
template <typename ScalarT = double>
class Rosenbrock {
public:
  using Scalar = ScalarT;

  explicit Rosenbrock(Scalar a = 1, Scalar b = 100) : a_(a), b_(b) {}

  std::size_t dimension() const noexcept { return 2; }

  Scalar evaluate(const Vector<Scalar> &p) const {
    const Scalar u = a_ - p(0);
    const Scalar w = p(1) - p(0) * p(0);
    return u * u + b_ * w * w;
  }

  void gradient(const Vector<Scalar> &p, Vector<Scalar> &g) const {
    const Scalar w = p(1) - p(0) * p(0);
    g.resize(2);
    g(0) = -2 * (a_ - p(0)) - 4 * b_ * p(0) * w;
    g(1) = 2 * b_ * w;
  }

private:
  Scalar a_;
  Scalar b_;
};

} // namespace uml::optim

#endif // UML_OPTIMIZERS_OBJECTIVES_HPP
