#ifndef UML_CLASSIFIERS_PERCEPTRON_HPP
#define UML_CLASSIFIERS_PERCEPTRON_HPP

#include "uml/classifiers/classifier.hpp"

namespace uml::classifiers {

/// Multiclass perceptron. Weights are numClasses x (numDims + 1), the last
/// column holding the bias. One epoch visits the points in column order; a
/// mistake adds the point to the true class row and subtracts it from the
/// predicted row. Training stops after the first error-free epoch.
template <typename ScalarT = double>
class Perceptron {
public:
  using Scalar = ScalarT;

  explicit Perceptron(std::size_t maxEpochs = 1000) : maxEpochs_(maxEpochs) {
    if (maxEpochs == 0)
      throw InvalidArgument("perceptron: epoch budget must be positive");
  }

  static Perceptron fromWeights(DataMatrix<Scalar> weights) {
    if (weights.rows() == 0 || weights.cols() < 2)
      throw InvalidArgument("perceptron: weight matrix must be classes x (dims + 1)");
    Perceptron p;
    p.weights_ = std::move(weights);
    return p;
  }

  void train(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses) {
    detail::check_training_set(data, labels, numClasses);
    const auto d = data.rows();
    weights_ = DataMatrix<Scalar>::Zero(static_cast<Eigen::Index>(numClasses), d + 1);
    converged_ = false;
    epochsUsed_ = 0;
    updates_ = 0;
    for (std::size_t epoch = 1; epoch <= maxEpochs_; ++epoch) {
      std::size_t mistakes = 0;
      for (Eigen::Index j = 0; j < data.cols(); ++j) {
        const auto predicted = static_cast<Eigen::Index>(classify(data.col(j)));
        const auto truth = static_cast<Eigen::Index>(labels(j));
        if (predicted == truth)
          continue;
        ++mistakes;
        weights_.row(truth).head(d) += data.col(j).transpose();
        weights_(truth, d) += 1;
        weights_.row(predicted).head(d) -= data.col(j).transpose();
        weights_(predicted, d) -= 1;
      }
      epochsUsed_ = epoch;
      updates_ += mistakes;
      if (mistakes == 0) {
        converged_ = true;
        break;
      }
    }
  }

  std::size_t classify(const Eigen::Ref<const Vector<Scalar>> &point) const {
    if (weights_.size() == 0)
      throw NotTrained();
    detail::check_point(point.size(), numDims());
    const auto d = point.size();
    const Vector<Scalar> scores = weights_.leftCols(d) * point + weights_.col(d);
    Eigen::Index best = 0;
    scores.maxCoeff(&best);
    return static_cast<std::size_t>(best);
  }

  void classify(const DataMatrix<Scalar> &data, LabelRow &predictions) const {
    if (weights_.size() == 0)
      throw NotTrained();
    predictions.resize(data.cols());
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      predictions(j) = classify(data.col(j));
  }

  std::size_t numClasses() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t numDims() const noexcept { return weights_.cols() > 0 ? static_cast<std::size_t>(weights_.cols() - 1) : 0; }
  const DataMatrix<Scalar> &weights() const noexcept { return weights_; }
  bool converged() const noexcept { return converged_; }
  std::size_t epochsUsed() const noexcept { return epochsUsed_; }
  std::size_t updates() const noexcept { return updates_; }
  std::size_t maxEpochs() const noexcept { return maxEpochs_; }

private:
  std::size_t maxEpochs_;
  DataMatrix<Scalar> weights_;
  bool converged_ = false;
  std::size_t epochsUsed_ = 0;
  std::size_t updates_ = 0;
};

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_PERCEPTRON_HPP
