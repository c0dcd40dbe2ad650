#ifndef UML_OPTIMIZERS_FINITE_DIFFERENCE_HPP
#define UML_OPTIMIZERS_FINITE_DIFFERENCE_HPP

#include "uml/optimizers/function.hpp"

namespace uml::optim {

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h in every dimension.
template <ObjectiveFunction F>
Vector<typename F::Scalar> finite_difference_gradient(const F &f, const Vector<typename F::Scalar> &x, double h = 1e-6) {
  using Scalar = typename F::Scalar;
  if (!(h > 0.0))
    throw InvalidArgument("finite difference step must be positive");
  detail::check_start(f, x);
  Vector<Scalar> g(x.size());
  Vector<Scalar> probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + static_cast<Scalar>(h);
    const Scalar up = detail::checked(f.evaluate(probe), static_cast<std::size_t>(i));
    probe(i) = x(i) - static_cast<Scalar>(h);
    const Scalar down = detail::checked(f.evaluate(probe), static_cast<std::size_t>(i));
    probe(i) = x(i);
    g(i) = (up - down) / static_cast<Scalar>(2 * h);
  }
  return g;
}

} // namespace uml::optim

#endif // UML_OPTIMIZERS_FINITE_DIFFERENCE_HPP
