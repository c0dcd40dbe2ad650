#ifndef UML_OPTIMIZERS_SIMULATED_ANNEALING_HPP
#define UML_OPTIMIZERS_SIMULATED_ANNEALING_HPP

#include "uml/core/random.hpp"
#include "uml/optimizers/function.hpp"

#include <cmath>
#include <random>
#include <string_view>

namespace uml::optim {

struct AnnealingSchedule {
  double initialTemperature = 1.0;
  /// Geometric cooling: T <- coolingRate * T after every proposal.
  double coolingRate = 0.999;
};

template <typename Scalar>
struct AnnealingResult : OptimizationResult<Scalar> {
  std::size_t acceptedMoves = 0;
};

/// Metropolis search with Gaussian proposals of scale stepSize. Runs the whole
/// iteration budget (there is no convergence test, so `converged` stays false)
/// and returns the best point visited.
class SimulatedAnnealing {
public:
  static constexpr std::string_view name = "sa";

  explicit SimulatedAnnealing(OptimizerConfig config = {}, AnnealingSchedule schedule = {})
      : config_(config), schedule_(schedule) {
    config_.validate();
    if (!(schedule.initialTemperature > 0.0))
      throw InvalidArgument("annealing: initial temperature must be positive");
    if (!(schedule.coolingRate > 0.0 && schedule.coolingRate <= 1.0))
      throw InvalidArgument("annealing: cooling rate must lie in (0, 1]");
  }

  template <ObjectiveFunction F>
  AnnealingResult<typename F::Scalar> optimize(const F &f, const Vector<typename F::Scalar> &x0) const {
    using Scalar = typename F::Scalar;
    detail::check_start(f, x0);
    Rng rng(config_.seed);
    std::normal_distribution<Scalar> normal(0, 1);

    Vector<Scalar> x = x0;
    Scalar fx = detail::checked(f.evaluate(x), 0);
    AnnealingResult<Scalar> out;
    out.finalPoint = x;
    out.finalObjective = fx;

    Vector<Scalar> candidate(x.size());
    double temperature = schedule_.initialTemperature;
    const auto scale = static_cast<Scalar>(config_.stepSize);
    for (std::size_t it = 1; it <= config_.maxIterations; ++it) {
      for (Eigen::Index i = 0; i < x.size(); ++i)
        candidate(i) = x(i) + scale * normal(rng);
      const Scalar fc = detail::checked(f.evaluate(candidate), it);
      const double delta = static_cast<double>(fc - fx);
      const double u = uniform_unit(rng);
      if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
        x = candidate;
        fx = fc;
        ++out.acceptedMoves;
        if (fx < out.finalObjective) {
          out.finalPoint = x;
          out.finalObjective = fx;
        }
      }
      temperature *= schedule_.coolingRate;
      out.iterationsUsed = it;
    }
    return out;
  }

private:
  OptimizerConfig config_;
  AnnealingSchedule schedule_;
};

template <ObjectiveFunction F>
AnnealingResult<typename F::Scalar> simulated_annealing(const F &f, const Vector<typename F::Scalar> &x0,
                                                        const OptimizerConfig &config = {},
                                                        const AnnealingSchedule &schedule = {}) {
  return SimulatedAnnealing(config, schedule).optimize(f, x0);
}

} // namespace uml::optim

#endif // UML_OPTIMIZERS_SIMULATED_ANNEALING_HPP
