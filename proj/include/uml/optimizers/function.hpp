#ifndef UML_OPTIMIZERS_FUNCTION_HPP
#define UML_OPTIMIZERS_FUNCTION_HPP

#include "uml/core/error.hpp"
#include "uml/core/types.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>

namespace uml::optim {

/// Anything with a dimension and a scalar objective.
template <typename F>
concept ObjectiveFunction = requires(const F &f, const Vector<typename F::Scalar> &x) {
  typename F::Scalar;
  { f.dimension() } -> std::convertible_to<std::size_t>;
  { f.evaluate(x) } -> std::convertible_to<typename F::Scalar>;
};

/// Objective plus its gradient, written into a caller-provided vector.
template <typename F>
concept DifferentiableFunction =
    ObjectiveFunction<F> && requires(const F &f, const Vector<typename F::Scalar> &x, Vector<typename F::Scalar> &g) {
      f.gradient(x, g);
    };

/// Objective that is a sum of numTerms() terms, with per-term access. evaluate()
/// must equal the sum of evaluateTerm() over all terms.
template <typename F>
concept SeparableFunction =
    ObjectiveFunction<F> &&
    requires(const F &f, const Vector<typename F::Scalar> &x, Vector<typename F::Scalar> &g, std::size_t i) {
      { f.numTerms() } -> std::convertible_to<std::size_t>;
      { f.evaluateTerm(x, i) } -> std::convertible_to<typename F::Scalar>;
      f.gradientTerm(x, i, g);
    };

struct OptimizerConfig {
  double stepSize = 0.01;
  std::size_t maxIterations = 100000;
  /// Stop once the objective changes by less than this between iterations (epochs).
  double tolerance = 1e-8;
  std::uint64_t seed = 42;

  void validate() const {
    if (!(stepSize > 0.0))
      throw InvalidArgument("optimizer step size must be positive");
    if (maxIterations == 0)
      throw InvalidArgument("optimizer iteration budget must be positive");
    if (!(tolerance > 0.0))
      throw InvalidArgument("optimizer tolerance must be positive");
  }
};

template <typename Scalar>
struct OptimizationResult {
  Vector<Scalar> finalPoint;
  Scalar finalObjective = 0;
  std::size_t iterationsUsed = 0;
  bool converged = false;
};

/// Optimizer policy: `optimize(f, x0)` returning an OptimizationResult.
template <typename O, typename F>
concept OptimizerFor = requires(const O &opt, const F &f, const Vector<typename F::Scalar> &x0) {
  { opt.optimize(f, x0) } -> std::convertible_to<OptimizationResult<typename F::Scalar>>;
};

namespace detail {

template <typename F>
void check_start(const F &f, const Vector<typename F::Scalar> &x0) {
  if (static_cast<std::size_t>(x0.size()) != f.dimension())
    throw InvalidArgument("starting point has dimension " + std::to_string(x0.size()) + ", objective expects " +
                          std::to_string(f.dimension()));
}

template <typename Scalar>
Scalar checked(Scalar value, std::size_t iteration) {
  if (!std::isfinite(value))
    throw OptimizationError(iteration, "non-finite objective");
  return value;
}

template <typename Scalar>
void check_gradient(const Vector<Scalar> &g, std::size_t iteration) {
  if (!g.allFinite())
    throw OptimizationError(iteration, "non-finite gradient");
}

} // namespace detail

} // namespace uml::optim

#endif // UML_OPTIMIZERS_FUNCTION_HPP
