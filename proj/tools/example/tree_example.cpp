// Minimal program against the library: load, hold out 20%, train a decision
// tree, classify the held-out points and print the accuracy.
//
//   uml_tree_example data.csv labels.csv

#include "uml/uml.hpp"

#include <cstdio>
#include <exception>

int main(int argc, char **argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s data.csv labels.csv\n", argv[0]);
    return 2;
  }
  try {
    const uml::Matrix dataset = uml::data::load_matrix(argv[1]);
    const auto encoded = uml::data::encode_labels(uml::data::load_labels(argv[2]));

    const auto parts = uml::data::split(dataset, encoded.labels, 0.2, 42);

    uml::classifiers::DecisionTree<> tree;
    tree.train(parts.trainData, parts.trainLabels, encoded.numClasses);

    uml::LabelRow predictions;
    tree.classify(parts.testData, predictions);
    std::printf("%s\n", uml::workflows::format_accuracy_line(uml::data::accuracy(predictions, parts.testLabels)).c_str());
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
