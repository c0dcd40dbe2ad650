#ifndef UML_OPTIMIZERS_GRADIENT_DESCENT_HPP
#define UML_OPTIMIZERS_GRADIENT_DESCENT_HPP

#include "uml/optimizers/function.hpp"

#include <string_view>

namespace uml::optim {

/// Fixed-step batch gradient descent: x <- x - stepSize * grad f(x).
class GradientDescent {
public:
  static constexpr std::string_view name = "gd";

  explicit GradientDescent(OptimizerConfig config = {}) : config_(config) { config_.validate(); }

  const OptimizerConfig &config() const noexcept { return config_; }

  template <DifferentiableFunction F>
  OptimizationResult<typename F::Scalar> optimize(const F &f, const Vector<typename F::Scalar> &x0) const {
    using Scalar = typename F::Scalar;
    detail::check_start(f, x0);
    OptimizationResult<Scalar> out;
    out.finalPoint = x0;
    Scalar current = detail::checked(f.evaluate(out.finalPoint), 0);
    Vector<Scalar> g(x0.size());
    const auto step = static_cast<Scalar>(config_.stepSize);
    for (std::size_t it = 1; it <= config_.maxIterations; ++it) {
      f.gradient(out.finalPoint, g);
      detail::check_gradient(g, it);
      out.finalPoint -= step * g;
      const Scalar next = detail::checked(f.evaluate(out.finalPoint), it);
      out.iterationsUsed = it;
      const bool done = std::abs(next - current) < config_.tolerance;
      current = next;
      if (done) {
        out.converged = true;
        break;
      }
    }
    out.finalObjective = current;
    return out;
  }

private:
  OptimizerConfig config_;
};

template <DifferentiableFunction F>
OptimizationResult<typename F::Scalar> gradient_descent(const F &f, const Vector<typename F::Scalar> &x0,
                                                        const OptimizerConfig &config = {}) {
  return GradientDescent(config).optimize(f, x0);
}

} // namespace uml::optim

#endif // UML_OPTIMIZERS_GRADIENT_DESCENT_HPP
