#ifndef UML_CLASSIFIERS_REGISTRY_HPP
#define UML_CLASSIFIERS_REGISTRY_HPP

#include "uml/classifiers/decision_tree.hpp"
#include "uml/classifiers/logistic_regression.hpp"
#include "uml/classifiers/naive_bayes.hpp"
#include "uml/classifiers/perceptron.hpp"

#include <array>
#include <string>
#include <string_view>
#include <variant>

namespace uml::classifiers {

static_assert(Classifier<DecisionTree<>>);
static_assert(Classifier<NaiveBayes<>>);
static_assert(Classifier<Perceptron<>>);
static_assert(Classifier<LogisticRegression<>>);
static_assert(Classifier<DecisionTree<float>, float>);

using AnyClassifier = std::variant<DecisionTree<>, NaiveBayes<>, Perceptron<>, LogisticRegression<>>;

inline constexpr std::array<std::string_view, 4> kClassifierNames = {"decision_tree", "naive_bayes", "perceptron",
                                                                      "logistic_regression"};

/// Default-constructed classifier by name; throws InvalidArgument listing the
/// valid names otherwise.
inline AnyClassifier make_classifier(std::string_view name) {
  if (name == kClassifierNames[0])
    return DecisionTree<>();
  if (name == kClassifierNames[1])
    return NaiveBayes<>();
  if (name == kClassifierNames[2])
    return Perceptron<>();
  if (name == kClassifierNames[3])
    return LogisticRegression<>();
  std::string valid;
  for (const auto n : kClassifierNames)
    valid += (valid.empty() ? "" : ", ") + std::string(n);
  throw InvalidArgument("unknown classifier '" + std::string(name) + "' (valid: " + valid + ")");
}

inline double train_and_score(AnyClassifier &classifier, const Matrix &trainData, const LabelRow &trainLabels,
                              const Matrix &testData, const LabelRow &testLabels, std::size_t numClasses) {
  return std::visit(
      [&](auto &model) { return train_and_score(model, trainData, trainLabels, testData, testLabels, numClasses); },
      classifier);
}

inline double train_and_score(std::string_view name, const Matrix &trainData, const LabelRow &trainLabels,
                              const Matrix &testData, const LabelRow &testLabels, std::size_t numClasses) {
  AnyClassifier classifier = make_classifier(name);
  return train_and_score(classifier, trainData, trainLabels, testData, testLabels, numClasses);
}

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_REGISTRY_HPP
