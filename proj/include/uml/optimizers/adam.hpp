#ifndef UML_OPTIMIZERS_ADAM_HPP
#define UML_OPTIMIZERS_ADAM_HPP

#include "uml/core/random.hpp"
#include "uml/optimizers/function.hpp"

#include <cmath>
#include <string_view>

namespace uml::optim {

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias-corrected first and second moments. Term visiting, gradient
/// scaling and epoch-level stopping follow StochasticGradientDescent.
class Adam {
public:
  static constexpr std::string_view name = "adam";

  explicit Adam(OptimizerConfig config = {}, AdamParams params = {}) : config_(config), params_(params) {
    config_.validate();
    if (!(params.beta1 >= 0.0 && params.beta1 < 1.0) || !(params.beta2 >= 0.0 && params.beta2 < 1.0))
      throw InvalidArgument("adam: moment decay rates must lie in [0, 1)");
    if (!(params.epsilon > 0.0))
      throw InvalidArgument("adam: epsilon must be positive");
  }

  const OptimizerConfig &config() const noexcept { return config_; }
  const AdamParams &params() const noexcept { return params_; }

  template <SeparableFunction F>
  OptimizationResult<typename F::Scalar> optimize(const F &f, const Vector<typename F::Scalar> &x0) const {
    using Scalar = typename F::Scalar;
    detail::check_start(f, x0);
    const std::size_t terms = f.numTerms();
    if (terms == 0)
      throw InvalidArgument("adam: objective has no terms");

    OptimizationResult<Scalar> out;
    out.finalPoint = x0;
    Scalar current = detail::checked(f.evaluate(out.finalPoint), 0);
    Vector<Scalar> g(x0.size());
    Vector<Scalar> m = Vector<Scalar>::Zero(x0.size());
    Vector<Scalar> v = Vector<Scalar>::Zero(x0.size());
    const auto b1 = static_cast<Scalar>(params_.beta1);
    const auto b2 = static_cast<Scalar>(params_.beta2);
    const auto eps = static_cast<Scalar>(params_.epsilon);
    const auto step = static_cast<Scalar>(config_.stepSize);
    const auto n = static_cast<Scalar>(terms);
    Scalar b1Power = 1;
    Scalar b2Power = 1;
    Rng rng(config_.seed);
    for (std::size_t epoch = 1; epoch <= config_.maxIterations; ++epoch) {
      for (const std::size_t i : shuffled_indices(terms, rng)) {
        f.gradientTerm(out.finalPoint, i, g);
        detail::check_gradient(g, epoch);
        g *= n;
        m = b1 * m + (1 - b1) * g;
        v = b2 * v + (1 - b2) * g.cwiseAbs2();
        b1Power *= b1;
        b2Power *= b2;
        const Scalar c1 = 1 - b1Power;
        const Scalar c2 = 1 - b2Power;
        out.finalPoint.array() -= step * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
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
  AdamParams params_;
};

template <SeparableFunction F>
OptimizationResult<typename F::Scalar> adam(const F &f, const Vector<typename F::Scalar> &x0,
                                            const OptimizerConfig &config = {}, const AdamParams &params = {}) {
  return Adam(config, params).optimize(f, x0);
}

} // namespace uml::optim

#endif // UML_OPTIMIZERS_ADAM_HPP
