#ifndef UML_CLASSIFIERS_LOGISTIC_REGRESSION_HPP
#define UML_CLASSIFIERS_LOGISTIC_REGRESSION_HPP

#include "uml/classifiers/classifier.hpp"
#include "uml/optimizers/adam.hpp"
#include "uml/optimizers/gradient_descent.hpp"
#include "uml/optimizers/sgd.hpp"

#include <cmath>
#include <string>
#include <string_view>

namespace uml::classifiers {

/// Mean binary cross-entropy of a linear model plus (lambda / 2) |w|^2.
///
/// Parameters are (w, b) with the bias last; the bias is not penalized. As a
/// separable objective each term is one example's loss plus its share of the
/// penalty, both divided by the number of examples, so the terms sum to
/// evaluate().
template <typename ScalarT = double>
class LogisticRegressionFunction {
public:
  using Scalar = ScalarT;

  /// `targets` holds 0/1 per column of `data`. Both must outlive the function.
  LogisticRegressionFunction(const DataMatrix<Scalar> &data, const Vector<Scalar> &targets, double lambda)
      : data_(data), targets_(targets), lambda_(static_cast<Scalar>(lambda)) {
    if (targets.size() != data.cols() || data.cols() == 0)
      throw InvalidArgument("logistic regression: targets do not match data");
    if (!(lambda >= 0.0))
      throw InvalidArgument("logistic regression: penalty must be non-negative");
  }

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(data_.rows() + 1); }
  std::size_t numTerms() const noexcept { return static_cast<std::size_t>(data_.cols()); }

  Scalar evaluate(const Vector<Scalar> &theta) const {
    const auto d = data_.rows();
    const Vector<Scalar> z = (data_.transpose() * theta.head(d)).array() + theta(d);
    Scalar loss = 0;
    for (Eigen::Index i = 0; i < z.size(); ++i)
      loss += softplus(z(i)) - targets_(i) * z(i);
    return loss / static_cast<Scalar>(data_.cols()) + penalty(theta);
  }

  void gradient(const Vector<Scalar> &theta, Vector<Scalar> &g) const {
    const auto d = data_.rows();
    const Vector<Scalar> z = (data_.transpose() * theta.head(d)).array() + theta(d);
    Vector<Scalar> residual(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      residual(i) = sigmoid(z(i)) - targets_(i);
    const auto n = static_cast<Scalar>(data_.cols());
    g.resize(d + 1);
    g.head(d) = data_ * residual / n + lambda_ * theta.head(d);
    g(d) = residual.sum() / n;
  }

  Scalar evaluateTerm(const Vector<Scalar> &theta, std::size_t i) const {
    const auto d = data_.rows();
    const auto j = static_cast<Eigen::Index>(i);
    const Scalar z = data_.col(j).dot(theta.head(d)) + theta(d);
    return (softplus(z) - targets_(j) * z + penalty(theta)) / static_cast<Scalar>(data_.cols());
  }

  void gradientTerm(const Vector<Scalar> &theta, std::size_t i, Vector<Scalar> &g) const {
    const auto d = data_.rows();
    const auto j = static_cast<Eigen::Index>(i);
    const Scalar z = data_.col(j).dot(theta.head(d)) + theta(d);
    const Scalar r = sigmoid(z) - targets_(j);
    const auto n = static_cast<Scalar>(data_.cols());
    g.resize(d + 1);
    g.head(d) = (r * data_.col(j) + lambda_ * theta.head(d)) / n;
    g(d) = r / n;
  }

  static Scalar sigmoid(Scalar z) {
    if (z >= 0)
      return 1 / (1 + std::exp(-z));
    const Scalar e = std::exp(z);
    return e / (1 + e);
  }

  static Scalar softplus(Scalar z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

private:
  Scalar penalty(const Vector<Scalar> &theta) const {
    return lambda_ / 2 * theta.head(data_.rows()).squaredNorm();
  }

  const DataMatrix<Scalar> &data_;
  const Vector<Scalar> &targets_;
  Scalar lambda_;
};

enum class OptimizerChoice { GradientDescent, Sgd, Adam };

/// "gd", "sgd" or "adam"; throws InvalidArgument otherwise.
inline OptimizerChoice parse_optimizer(std::string_view name) {
  if (name == optim::GradientDescent::name)
    return OptimizerChoice::GradientDescent;
  if (name == optim::StochasticGradientDescent::name)
    return OptimizerChoice::Sgd;
  if (name == optim::Adam::name)
    return OptimizerChoice::Adam;
  throw InvalidArgument("unknown optimizer '" + std::string(name) + "' (expected gd, sgd or adam)");
}

/// L2-regularized logistic regression. Two classes give one binary model on
/// label 1; more classes are handled one-vs-rest with one weight row per class.
/// Each row is (w, b). Any optimizer satisfying OptimizerFor can train it.
template <typename ScalarT = double>
class LogisticRegression {
public:
  using Scalar = ScalarT;

  explicit LogisticRegression(OptimizerChoice optimizer = OptimizerChoice::GradientDescent,
                              optim::OptimizerConfig config = defaultConfig(), double lambda = 1e-4)
      : optimizer_(optimizer), config_(config), lambda_(lambda) {
    config_.validate();
    if (!(lambda >= 0.0))
      throw InvalidArgument("logistic regression: penalty must be non-negative");
  }

  static optim::OptimizerConfig defaultConfig() {
    optim::OptimizerConfig cfg;
    cfg.stepSize = 0.5;
    cfg.maxIterations = 10000;
    cfg.tolerance = 1e-8;
    return cfg;
  }

  /// Per-sample optimizers take one step per point, so they get a smaller step
  /// and count maxIterations in epochs.
  static optim::OptimizerConfig defaultConfig(OptimizerChoice optimizer) {
    optim::OptimizerConfig cfg = defaultConfig();
    if (optimizer != OptimizerChoice::GradientDescent) {
      cfg.stepSize = 0.01;
      cfg.maxIterations = 1000;
    }
    return cfg;
  }

  static LogisticRegression fromWeights(DataMatrix<Scalar> weights, std::size_t numClasses, double lambda,
                                        std::string trainedWith) {
    const Eigen::Index expectedRows = numClasses > 2 ? static_cast<Eigen::Index>(numClasses) : 1;
    if (numClasses < 2 || weights.rows() != expectedRows || weights.cols() < 2)
      throw InvalidArgument("logistic regression: weight shape does not match class count");
    LogisticRegression model(OptimizerChoice::GradientDescent, defaultConfig(), lambda);
    model.weights_ = std::move(weights);
    model.numClasses_ = numClasses;
    model.numDims_ = static_cast<std::size_t>(model.weights_.cols() - 1);
    model.trainedWith_ = std::move(trainedWith);
    return model;
  }

  void train(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses) {
    switch (optimizer_) {
    case OptimizerChoice::GradientDescent:
      train(data, labels, numClasses, optim::GradientDescent(config_));
      break;
    case OptimizerChoice::Sgd:
      train(data, labels, numClasses, optim::StochasticGradientDescent(config_));
      break;
    case OptimizerChoice::Adam:
      train(data, labels, numClasses, optim::Adam(config_));
      break;
    }
  }

  template <typename Optimizer>
    requires optim::OptimizerFor<Optimizer, LogisticRegressionFunction<Scalar>>
  void train(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses,
             const Optimizer &optimizer) {
    detail::check_training_set(data, labels, numClasses);
    const auto d = data.rows();
    numDims_ = static_cast<std::size_t>(d);
    numClasses_ = numClasses;
    if constexpr (requires { Optimizer::name; })
      trainedWith_ = std::string(Optimizer::name);
    else
      trainedWith_ = "custom";

    if (numClasses == 1) {
      weights_.resize(0, d + 1);
      return;
    }
    const Eigen::Index models = numClasses > 2 ? static_cast<Eigen::Index>(numClasses) : 1;
    weights_.resize(models, d + 1);
    lastObjectives_.resize(models);
    for (Eigen::Index m = 0; m < models; ++m) {
      const std::size_t positive = numClasses > 2 ? static_cast<std::size_t>(m) : 1;
      Vector<Scalar> targets(labels.size());
      for (Eigen::Index j = 0; j < labels.size(); ++j)
        targets(j) = labels(j) == positive ? Scalar(1) : Scalar(0);
      const LogisticRegressionFunction<Scalar> objective(data, targets, lambda_);
      const auto result = optimizer.optimize(objective, Vector<Scalar>::Zero(d + 1));
      weights_.row(m) = result.finalPoint.transpose();
      lastObjectives_(m) = static_cast<double>(result.finalObjective);
    }
  }

  /// Decision values: one for a binary model (positive means class 1), one
  /// per class for one-vs-rest.
  Vector<Scalar> scores(const Eigen::Ref<const Vector<Scalar>> &point) const {
    requireTrained();
    detail::check_point(point.size(), numDims_);
    const auto d = point.size();
    return weights_.leftCols(d) * point + weights_.col(d);
  }

  std::size_t classify(const Eigen::Ref<const Vector<Scalar>> &point) const {
    if (numClasses_ == 1) {
      detail::check_point(point.size(), numDims_);
      return 0;
    }
    const Vector<Scalar> s = scores(point);
    if (numClasses_ == 2)
      return s(0) > 0 ? 1 : 0;
    Eigen::Index best = 0;
    s.maxCoeff(&best);
    return static_cast<std::size_t>(best);
  }

  void classify(const DataMatrix<Scalar> &data, LabelRow &predictions) const {
    requireTrained();
    predictions.resize(data.cols());
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      predictions(j) = classify(data.col(j));
  }

  bool trained() const noexcept { return numClasses_ > 0; }
  std::size_t numClasses() const noexcept { return numClasses_; }
  std::size_t numDims() const noexcept { return numDims_; }
  double lambda() const noexcept { return lambda_; }
  const DataMatrix<Scalar> &weights() const noexcept { return weights_; }
  const std::string &trainedWith() const noexcept { return trainedWith_; }
  /// Final objective of each binary sub-model from the last train() call.
  const VectorXd &lastObjectives() const noexcept { return lastObjectives_; }

private:
  void requireTrained() const {
    if (!trained())
      throw NotTrained();
  }

  OptimizerChoice optimizer_;
  optim::OptimizerConfig config_;
  double lambda_;
  DataMatrix<Scalar> weights_;
  std::size_t numClasses_ = 0;
  std::size_t numDims_ = 0;
  std::string trainedWith_;
  VectorXd lastObjectives_;
};

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_LOGISTIC_REGRESSION_HPP
