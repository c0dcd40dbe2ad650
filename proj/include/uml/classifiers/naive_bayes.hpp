#ifndef UML_CLASSIFIERS_NAIVE_BAYES_HPP
#define UML_CLASSIFIERS_NAIVE_BAYES_HPP

#include "uml/classifiers/classifier.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace uml::classifiers {

/// Gaussian naive Bayes. Per-class means and population variances are stored
/// one class per column (dims x classes). Classes absent from the training set
/// get prior 0 and are never predicted.
template <typename ScalarT = double>
class NaiveBayes {
public:
  using Scalar = ScalarT;

  static constexpr double kVarianceFloor = 1e-10;

  NaiveBayes() = default;

  static NaiveBayes fromParameters(VectorXd priors, DataMatrix<Scalar> means, DataMatrix<Scalar> variances) {
    if (priors.size() == 0 || means.cols() != priors.size() || variances.cols() != priors.size() ||
        means.rows() != variances.rows() || means.rows() == 0)
      throw InvalidArgument("naive Bayes: inconsistent parameter shapes");
    if ((priors.array() < 0).any() || (variances.array() <= 0).any())
      throw InvalidArgument("naive Bayes: negative prior or non-positive variance");
    NaiveBayes nb;
    nb.priors_ = std::move(priors);
    nb.means_ = std::move(means);
    nb.variances_ = std::move(variances);
    nb.updateCache();
    return nb;
  }

  void train(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses) {
    detail::check_training_set(data, labels, numClasses);
    const auto d = data.rows();
    const auto C = static_cast<Eigen::Index>(numClasses);
    VectorXd counts = VectorXd::Zero(C);
    means_ = DataMatrix<Scalar>::Zero(d, C);
    variances_ = DataMatrix<Scalar>::Zero(d, C);
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      const auto c = static_cast<Eigen::Index>(labels(j));
      counts(c) += 1;
      means_.col(c) += data.col(j);
    }
    for (Eigen::Index c = 0; c < C; ++c)
      if (counts(c) > 0)
        means_.col(c) /= static_cast<Scalar>(counts(c));
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      const auto c = static_cast<Eigen::Index>(labels(j));
      variances_.col(c) += (data.col(j) - means_.col(c)).cwiseAbs2();
    }
    for (Eigen::Index c = 0; c < C; ++c)
      if (counts(c) > 0)
        variances_.col(c) /= static_cast<Scalar>(counts(c));
    variances_ = variances_.cwiseMax(static_cast<Scalar>(kVarianceFloor));
    priors_ = counts / static_cast<double>(data.cols());
    updateCache();
  }

  /// Log joint likelihood of `point` under every class; -inf for prior-0 classes.
  VectorXd logScores(const Eigen::Ref<const Vector<Scalar>> &point) const {
    requireTrained();
    detail::check_point(point.size(), numDims());
    VectorXd scores(priors_.size());
    for (Eigen::Index c = 0; c < priors_.size(); ++c) {
      if (priors_(c) <= 0) {
        scores(c) = -std::numeric_limits<double>::infinity();
        continue;
      }
      const auto diff2 = (point - means_.col(c)).array().square();
      scores(c) = logPriors_(c) + logNormalizers_(c) - static_cast<double>((diff2 / (2 * variances_.col(c).array())).sum());
    }
    return scores;
  }

  std::size_t classify(const Eigen::Ref<const Vector<Scalar>> &point) const {
    const VectorXd scores = logScores(point);
    std::size_t best = 0;
    for (Eigen::Index c = 1; c < scores.size(); ++c)
      if (scores(c) > scores(static_cast<Eigen::Index>(best)))
        best = static_cast<std::size_t>(c);
    return best;
  }

  void classify(const DataMatrix<Scalar> &data, LabelRow &predictions) const {
    requireTrained();
    predictions.resize(data.cols());
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      predictions(j) = classify(data.col(j));
  }

  bool trained() const noexcept { return priors_.size() > 0; }
  std::size_t numClasses() const noexcept { return static_cast<std::size_t>(priors_.size()); }
  std::size_t numDims() const noexcept { return static_cast<std::size_t>(means_.rows()); }
  const VectorXd &priors() const noexcept { return priors_; }
  const DataMatrix<Scalar> &means() const noexcept { return means_; }
  const DataMatrix<Scalar> &variances() const noexcept { return variances_; }

private:
  void requireTrained() const {
    if (!trained())
      throw NotTrained();
  }

  void updateCache() {
    logPriors_ = priors_.array().log();
    logNormalizers_.resize(priors_.size());
    for (Eigen::Index c = 0; c < priors_.size(); ++c)
      logNormalizers_(c) =
          -0.5 * static_cast<double>((2 * std::numbers::pi_v<Scalar> * variances_.col(c).array()).log().sum());
  }

  VectorXd priors_;
  DataMatrix<Scalar> means_;
  DataMatrix<Scalar> variances_;
  VectorXd logPriors_;
  VectorXd logNormalizers_;
};

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_NAIVE_BAYES_HPP
