#ifndef UML_CLASSIFIERS_CLASSIFIER_HPP
#define UML_CLASSIFIERS_CLASSIFIER_HPP

#include "uml/core/error.hpp"
#include "uml/core/types.hpp"
#include "uml/data/accuracy.hpp"
#include "uml/data/labels.hpp"

#include <concepts>
#include <cstddef>
#include <string>

namespace uml::classifiers {

/// The uniform classifier contract: train on (data, labels, numClasses), then
/// classify a single point or every column of a matrix.
template <typename C, typename Scalar = double>
concept Classifier = requires(C &c, const C &trained, const DataMatrix<Scalar> &data, const LabelRow &labels,
                              std::size_t numClasses, const Vector<Scalar> &point, LabelRow &predictions) {
  c.train(data, labels, numClasses);
  { trained.classify(point) } -> std::convertible_to<std::size_t>;
  trained.classify(data, predictions);
  { trained.numClasses() } -> std::convertible_to<std::size_t>;
};

namespace detail {

template <typename Scalar>
void check_training_set(const DataMatrix<Scalar> &data, const LabelRow &labels, std::size_t numClasses) {
  if (data.cols() == 0 || data.rows() == 0)
    throw InvalidArgument("training data is empty");
  if (labels.size() != data.cols())
    throw InvalidArgument(std::to_string(labels.size()) + " labels for " + std::to_string(data.cols()) + " points");
  if (numClasses == 0)
    throw InvalidArgument("number of classes must be positive");
  data::check_labels(labels, numClasses);
  if (!data.allFinite())
    throw InvalidArgument("training data contains non-finite values");
}

inline void check_point(Eigen::Index got, std::size_t expected) {
  if (static_cast<std::size_t>(got) != expected)
    throw InvalidArgument("point has dimension " + std::to_string(got) + ", model expects " +
                          std::to_string(expected));
}

} // namespace detail

/// Trains `classifier` and returns its accuracy on the test partition. Written
/// once against the Classifier contract; any conforming model runs through it.
template <typename Model, typename Scalar>
  requires Classifier<Model, Scalar>
double train_and_score(Model &classifier, const DataMatrix<Scalar> &trainData, const LabelRow &trainLabels,
                       const DataMatrix<Scalar> &testData, const LabelRow &testLabels, std::size_t numClasses) {
  classifier.train(trainData, trainLabels, numClasses);
  LabelRow predictions;
  classifier.classify(testData, predictions);
  return data::accuracy(predictions, testLabels);
}

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_CLASSIFIER_HPP
