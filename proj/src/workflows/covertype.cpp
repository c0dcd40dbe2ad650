#include "uml/workflows/covertype.hpp"

#include "uml/classifiers/decision_tree.hpp"
#include "uml/data/accuracy.hpp"
#include "uml/data/csv.hpp"
#include "uml/data/labels.hpp"
#include "uml/data/split.hpp"

#include <cstdio>
#include <exception>

namespace uml::workflows {
namespace {

template <typename Fn>
auto stage(const char *name, Fn &&fn) {
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(name, e.what());
  }
}

} // namespace

std::string format_accuracy_line(double accuracy) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "Decision tree classifier accuracy on test set: %.4f.", accuracy * 100.0);
  return buf;
}

CovertypeReport run_covertype_demo(const Matrix &data, const std::vector<std::uint64_t> &rawLabels,
                                   std::uint64_t seed) {
  const data::EncodedLabels encoded = stage("encode", [&] {
    data::EncodedLabels e = data::encode_labels(rawLabels);
    if (e.numClasses != kCovertypeClasses)
      throw InvalidArgument("expected " + std::to_string(kCovertypeClasses) + " classes, found " +
                            std::to_string(e.numClasses));
    return e;
  });
  const auto parts = stage("split", [&] { return data::split(data, encoded.labels, kCovertypeTestRatio, seed); });
  if (parts.testData.cols() == 0)
    throw StageError("split", "test partition is empty");

  classifiers::DecisionTree<> tree;
  stage("train", [&] {
    tree.train(parts.trainData, parts.trainLabels, kCovertypeClasses);
    return 0;
  });
  LabelRow predictions;
  stage("classify", [&] {
    tree.classify(parts.testData, predictions);
    return 0;
  });

  CovertypeReport report;
  report.accuracy = stage("score", [&] { return data::accuracy(predictions, parts.testLabels); });
  report.trainPoints = static_cast<std::size_t>(parts.trainData.cols());
  report.testPoints = static_cast<std::size_t>(parts.testData.cols());
  report.treeNodes = tree.nodes().size();
  report.line = format_accuracy_line(report.accuracy);
  return report;
}

CovertypeReport run_covertype_demo(const std::filesystem::path &dataPath, const std::filesystem::path &labelsPath,
                                   std::uint64_t seed) {
  const Matrix data = stage("load", [&] { return data::load_matrix(dataPath); });
  const auto raw = stage("load", [&] { return data::load_labels(labelsPath); });
  if (raw.size() != static_cast<std::size_t>(data.cols()))
    throw StageError("load", std::to_string(raw.size()) + " labels for " + std::to_string(data.cols()) + " points");
  return run_covertype_demo(data, raw, seed);
}

} // namespace uml::workflows
