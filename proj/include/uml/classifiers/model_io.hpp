#ifndef UML_CLASSIFIERS_MODEL_IO_HPP
#define UML_CLASSIFIERS_MODEL_IO_HPP

#include "uml/classifiers/decision_tree.hpp"
#include "uml/classifiers/logistic_regression.hpp"
#include "uml/classifiers/naive_bayes.hpp"
#include "uml/classifiers/perceptron.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace uml::classifiers {

// Line-oriented text models. Every file starts with
//   uml-model <type> <version>
// followed by a type-specific payload; docs/model-format.md has the layouts.
// Reals use shortest round-trip formatting, so save/load is exact.

inline constexpr int kModelFormatVersion = 1;

void save_model(std::ostream &out, const DecisionTree<> &model);
void save_model(std::ostream &out, const NaiveBayes<> &model);
void save_model(std::ostream &out, const Perceptron<> &model);
void save_model(std::ostream &out, const LogisticRegression<> &model);

DecisionTree<> load_decision_tree(std::istream &in);
NaiveBayes<> load_naive_bayes(std::istream &in);
Perceptron<> load_perceptron(std::istream &in);
LogisticRegression<> load_logistic_regression(std::istream &in);

template <typename Model>
void save_model_file(const std::filesystem::path &path, const Model &model);

DecisionTree<> load_decision_tree_file(const std::filesystem::path &path);

} // namespace uml::classifiers

#endif // UML_CLASSIFIERS_MODEL_IO_HPP
