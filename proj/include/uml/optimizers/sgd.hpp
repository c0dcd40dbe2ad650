#ifndef UML_OPTIMIZERS_SGD_HPP
#define UML_OPTIMIZERS_SGD_HPP

#include "uml/core/random.hpp"
#include "uml/optimizers/function.hpp"

#include <string_view>

namespace uml::optim {

/// Stochastic gradient descent over the terms of a separable objective.
///
/// Each epoch visits every term once in a freshly shuffled order. A visit to
/// term i steps along numTerms * grad f_i(x), the unbiased estimate of the
/// full gradient, so step sizes are comparable with GradientDescent. One
/// "iteration" is one epoch; stopping is checked on the full objective after
/// each epoch.
class StochasticGradientDescent {
public:
  static constexpr std::string_view name = "sgd";

  explicit StochasticGradientDescent(OptimizerConfig config = {}) : config_(config) { config_.validate(); }

  const OptimizerConfig &config() const noexcept { return config_; }

  template <SeparableFunction F>
  OptimizationResult<typename F::Scalar> optimize(const F &f, const Vector<typename F::Scalar> &x0) const {
    using Scalar = typename F::Scalar;
    detail::check_start(f, x0);
    const std::size_t terms = f.numTerms();
    if (terms == 0)
      throw InvalidArgument("sgd: objective has no terms");

    OptimizationResult<Scalar> out;
    out.finalPoint = x0;
    Scalar current = detail::checked(f.evaluate(out.finalPoint), 0);
    Vector<Scalar> g(x0.size());
    const auto scale = static_cast<Scalar>(config_.stepSize * static_cast<double>(terms));
    Rng rng(config_.seed);
    for (std::size_t epoch = 1; epoch <= config_.maxIterations; ++epoch) {
      for (const std::size_t i : shuffled_indices(terms, rng)) {
        f.gradientTerm(out.finalPoint, i, g);
        detail::check_gradient(g, epoch);
        out.finalPoint -= scale * g;
      }
      const Scalar next = detail::checked(f.evaluate(out.finalPoint), epoch);
      out.iterationsUsed = epoch;
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

template <SeparableFunction F>
OptimizationResult<typename F::Scalar> sgd(const F &f, const Vector<typename F::Scalar> &x0,
                                           const OptimizerConfig &config = {}) {
  return StochasticGradientDescent(config).optimize(f, x0);
}

} // namespace uml::optim

#endif // UML_OPTIMIZERS_SGD_HPP
