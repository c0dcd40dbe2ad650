#include "commands.hpp"

#include "uml/classifiers/decision_tree.hpp"
#include "uml/classifiers/logistic_regression.hpp"
#include "uml/classifiers/model_io.hpp"
#include "uml/clustering/boruvka_mst.hpp"
#include "uml/clustering/kmeans.hpp"
#include "uml/data/accuracy.hpp"
#include "uml/data/csv.hpp"
#include "uml/data/split.hpp"
#include "uml/metrics/metric_selector.hpp"
#include "uml/spatial/neighbor_search.hpp"
#include "uml/workflows/covertype.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>

namespace uml::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;

std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Refuses to clobber existing files, and to write two outputs to one path.
void guard_outputs(std::initializer_list<const std::string *> outputs, bool force) {
  std::set<std::filesystem::path> seen;
  for (const std::string *path : outputs) {
    if (path->empty())
      continue;
    if (!seen.insert(std::filesystem::weakly_canonical(*path)).second)
      throw UsageError("output path '" + *path + "' is given twice");
    if (!force && std::filesystem::exists(*path))
      throw UsageError("output '" + *path + "' already exists (pass --force to overwrite)");
  }
}

LabelRow to_label_row(const std::vector<std::uint64_t> &raw) {
  LabelRow labels(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i)
    labels(static_cast<Eigen::Index>(i)) = static_cast<std::size_t>(raw[i]);
  return labels;
}

// Labels must already be class indices; numClasses defaults to max + 1.
std::size_t resolve_classes(const LabelRow &labels, std::optional<std::size_t> requested) {
  if (labels.size() == 0)
    throw InvalidArgument("no labels");
  const std::size_t implied = labels.maxCoeff() + 1;
  if (!requested)
    return implied;
  if (implied > *requested)
    throw InvalidArgument("label " + std::to_string(implied - 1) + " is outside [0, " + std::to_string(*requested) +
                          ")");
  return *requested;
}

void check_pairing(const Matrix &data, const LabelRow &labels) {
  if (labels.size() != data.cols())
    throw InvalidArgument(std::to_string(labels.size()) + " labels for " + std::to_string(data.cols()) + " points");
}

metrics::AnyMetric metric_flag(const std::string &selector) {
  try {
    return metrics::parse_metric(selector);
  } catch (const InvalidArgument &e) {
    throw UsageError(std::string("--metric: ") + e.what());
  }
}

struct SplitOptions {
  std::string data, labels, trainData, testData, trainLabels, testLabels;
  double testRatio = 0.2;
  std::uint64_t seed = kDefaultSeed;
  bool force = false;
};

void run_split(const SplitOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.trainData, &o.testData, &o.trainLabels, &o.testLabels}, o.force);
  const Matrix x = data::load_matrix(o.data);
  const LabelRow y = to_label_row(data::load_labels(o.labels));
  const auto parts = data::split(x, y, o.testRatio, o.seed);
  data::save_matrix(o.trainData, parts.trainData);
  data::save_matrix(o.testData, parts.testData);
  data::save_labels(o.trainLabels, parts.trainLabels);
  data::save_labels(o.testLabels, parts.testLabels);
  outcome.add("train_points", static_cast<std::size_t>(parts.trainData.cols()));
  outcome.add("test_points", static_cast<std::size_t>(parts.testData.cols()));
}

struct TreeTrainOptions {
  std::string data, labels, model;
  std::optional<std::size_t> numClasses;
  std::size_t minLeafSize = 10;
  std::size_t maxDepth = 0;
  bool force = false;
};

void run_tree_train(const TreeTrainOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.model}, o.force);
  const Matrix x = data::load_matrix(o.data);
  const LabelRow y = to_label_row(data::load_labels(o.labels));
  check_pairing(x, y);
  const std::size_t classes = resolve_classes(y, o.numClasses);
  classifiers::DecisionTree<> tree(o.minLeafSize, o.maxDepth);
  tree.train(x, y, classes);
  classifiers::save_model_file(o.model, tree);
  LabelRow predictions;
  tree.classify(x, predictions);
  const double acc = data::accuracy(predictions, y);
  std::cout << "training accuracy: " << shortest(acc) << '\n';
  outcome.add("nodes", tree.nodes().size());
  outcome.add("training_accuracy", acc);
}

struct TreePredictOptions {
  std::string model, data, predictions, labels;
  bool force = false;
};

void run_tree_predict(const TreePredictOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.predictions}, o.force);
  const auto tree = classifiers::load_decision_tree_file(o.model);
  const Matrix x = data::load_matrix(o.data);
  LabelRow predictions;
  tree.classify(x, predictions);
  data::save_labels(o.predictions, predictions);
  outcome.add("points", static_cast<std::size_t>(x.cols()));
  if (!o.labels.empty()) {
    const LabelRow truth = to_label_row(data::load_labels(o.labels));
    check_pairing(x, truth);
    const double acc = data::accuracy(predictions, truth);
    std::cout << "accuracy: " << shortest(acc) << '\n';
    outcome.add("accuracy", acc);
  }
}

struct KnnOptions {
  std::string reference, query, metric = "euclidean", output;
  std::size_t k = 1;
  std::size_t leafSize = 20;
  bool force = false;
};

void run_knn(const KnnOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.output}, o.force);
  const metrics::AnyMetric metric = metric_flag(o.metric);
  const Matrix reference = data::load_matrix(o.reference);
  const Matrix queries = o.query.empty() ? reference : data::load_matrix(o.query);
  const spatial::KdTree<> tree(reference, o.leafSize);
  const auto result = std::visit([&](const auto &m) { return spatial::knn_search(tree, queries, o.k, m); }, metric);

  const auto K = result.indices.rows();
  Matrix rows(3, K * queries.cols());
  for (Eigen::Index q = 0; q < queries.cols(); ++q)
    for (Eigen::Index i = 0; i < K; ++i) {
      const Eigen::Index r = q * K + i;
      rows(0, r) = static_cast<double>(q);
      rows(1, r) = static_cast<double>(result.indices(i, q));
      rows(2, r) = result.distances(i, q);
    }
  data::save_matrix(o.output, rows);
  outcome.add("queries", static_cast<std::size_t>(queries.cols()));
  outcome.add("metric", metrics::metric_name(metric));
}

struct KMeansOptions {
  std::string data, centroids, assignments;
  std::size_t clusters = 0;
  std::size_t maxIterations = 1000;
  std::uint64_t seed = kDefaultSeed;
  bool force = false;
};

void run_kmeans(const KMeansOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.centroids, &o.assignments}, o.force);
  const Matrix x = data::load_matrix(o.data);
  const auto result = clustering::kmeans(x, o.clusters, o.maxIterations, o.seed);
  data::save_matrix(o.centroids, result.centroids);
  if (!o.assignments.empty())
    data::save_labels(o.assignments, std::vector<std::uint64_t>(result.assignments.begin(), result.assignments.end()));
  std::cout << "objective: " << shortest(result.objective) << '\n';
  outcome.add("objective", result.objective);
  outcome.add("iterations", result.iterations);
  outcome.add("converged", static_cast<std::size_t>(result.converged));
}

struct MstOptions {
  std::string data, metric = "euclidean", output;
  bool force = false;
};

void run_mst(const MstOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.output}, o.force);
  const metrics::AnyMetric metric = metric_flag(o.metric);
  const Matrix x = data::load_matrix(o.data);
  const auto mst = std::visit([&](const auto &m) { return clustering::boruvka_mst(x, m); }, metric);
  Matrix rows(3, static_cast<Eigen::Index>(mst.edges.size()));
  for (std::size_t i = 0; i < mst.edges.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    rows(0, c) = static_cast<double>(mst.edges[i].a);
    rows(1, c) = static_cast<double>(mst.edges[i].b);
    rows(2, c) = mst.edges[i].weight;
  }
  data::save_matrix(o.output, rows);
  std::cout << "total weight: " << shortest(mst.totalWeight) << '\n';
  outcome.add("total_weight", mst.totalWeight);
  outcome.add("edges", mst.edges.size());
}

struct LogRegOptions {
  std::string data, labels, optimizer = "gd", model;
  std::optional<std::size_t> numClasses;
  std::optional<double> stepSize, tolerance;
  std::optional<std::size_t> maxIterations;
  double lambda = 1e-4;
  std::uint64_t seed = kDefaultSeed;
  bool force = false;
};

void run_logreg(const LogRegOptions &o, RunOutcome &outcome) {
  guard_outputs({&o.model}, o.force);
  classifiers::OptimizerChoice choice;
  try {
    choice = classifiers::parse_optimizer(o.optimizer);
  } catch (const InvalidArgument &e) {
    throw UsageError(std::string("--optimizer: ") + e.what());
  }
  auto cfg = classifiers::LogisticRegression<>::defaultConfig(choice);
  cfg.stepSize = o.stepSize.value_or(cfg.stepSize);
  cfg.tolerance = o.tolerance.value_or(cfg.tolerance);
  cfg.maxIterations = o.maxIterations.value_or(cfg.maxIterations);
  cfg.seed = o.seed;
  std::optional<classifiers::LogisticRegression<>> model;
  try {
    model.emplace(choice, cfg, o.lambda);
  } catch (const InvalidArgument &e) {
    throw UsageError(e.what());
  }

  const Matrix x = data::load_matrix(o.data);
  const LabelRow y = to_label_row(data::load_labels(o.labels));
  check_pairing(x, y);
  const std::size_t classes = resolve_classes(y, o.numClasses);
  model->train(x, y, classes);
  if (!o.model.empty())
    classifiers::save_model_file(o.model, *model);
  LabelRow predictions;
  model->classify(x, predictions);
  const double acc = data::accuracy(predictions, y);
  std::cout << "accuracy: " << shortest(acc) << '\n';
  outcome.add("training_accuracy", acc);
}

struct CovertypeOptions {
  std::string data, labels;
  std::uint64_t seed = kDefaultSeed;
};

void run_covertype(const CovertypeOptions &o, RunOutcome &outcome) {
  const auto report = workflows::run_covertype_demo(o.data, o.labels, o.seed);
  std::cout << report.line << '\n';
  outcome.add("accuracy", report.accuracy);
  outcome.add("train_points", report.trainPoints);
  outcome.add("test_points", report.testPoints);
  outcome.add("tree_nodes", report.treeNodes);
}

template <typename Options, typename Run>
CLI::App *subcommand(CLI::App &app, RunOutcome &outcome, const std::string &name, const std::string &help,
                     std::shared_ptr<Options> options, Run run) {
  CLI::App *sub = app.add_subcommand(name, help);
  sub->callback([&outcome, name, options, run] {
    outcome.command = name;
    run(*options, outcome);
  });
  return sub;
}

void add_force(CLI::App *sub, bool &force) { sub->add_flag("--force", force, "Overwrite existing output files"); }

} // namespace

void RunOutcome::add(const std::string &key, double value) { metrics.emplace_back(key, shortest(value)); }
void RunOutcome::add(const std::string &key, std::size_t value) { metrics.emplace_back(key, std::to_string(value)); }
void RunOutcome::add(const std::string &key, const std::string &value) { metrics.emplace_back(key, value); }

void register_commands(CLI::App &app, RunOutcome &outcome) {
  {
    auto o = std::make_shared<SplitOptions>();
    auto *s = subcommand(app, outcome, "split", "Split a dataset and its labels into train and test sets", o, run_split);
    s->add_option("--data", o->data, "Input data CSV")->required();
    s->add_option("--labels", o->labels, "Input labels file")->required();
    s->add_option("--test-ratio", o->testRatio, "Fraction of points held out")->capture_default_str()->check(
        CLI::Range(0.0, 1.0));
    s->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    s->add_option("--train-data", o->trainData, "Output training data CSV")->required();
    s->add_option("--test-data", o->testData, "Output test data CSV")->required();
    s->add_option("--train-labels", o->trainLabels, "Output training labels")->required();
    s->add_option("--test-labels", o->testLabels, "Output test labels")->required();
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<TreeTrainOptions>();
    auto *s = subcommand(app, outcome, "tree-train", "Train a decision tree and save it", o, run_tree_train);
    s->add_option("--data", o->data, "Training data CSV")->required();
    s->add_option("--labels", o->labels, "Training labels (class indices)")->required();
    s->add_option("--num-classes", o->numClasses, "Number of classes (default: largest label + 1)")
        ->check(CLI::PositiveNumber);
    s->add_option("--min-leaf-size", o->minLeafSize, "Minimum points per leaf")->capture_default_str()->check(
        CLI::PositiveNumber);
    s->add_option("--max-depth", o->maxDepth, "Maximum depth, 0 for unbounded")->capture_default_str();
    s->add_option("--model", o->model, "Output model file")->required();
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<TreePredictOptions>();
    auto *s = subcommand(app, outcome, "tree-predict", "Classify points with a saved decision tree", o,
                         run_tree_predict);
    s->add_option("--model", o->model, "Model file from tree-train")->required();
    s->add_option("--data", o->data, "Data CSV to classify")->required();
    s->add_option("--predictions", o->predictions, "Output predictions file")->required();
    s->add_option("--labels", o->labels, "True labels; prints accuracy when given");
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<KnnOptions>();
    auto *s = subcommand(app, outcome, "knn", "Exact k-nearest-neighbor search with a kd-tree", o, run_knn);
    s->add_option("--reference", o->reference, "Reference data CSV")->required();
    s->add_option("--query", o->query, "Query data CSV (default: the reference set)");
    s->add_option("--k", o->k, "Number of neighbors")->required()->check(CLI::PositiveNumber);
    s->add_option("--metric", o->metric, "euclidean, manhattan, chebyshev, lp:<p> or lp:inf")->capture_default_str();
    s->add_option("--leaf-size", o->leafSize, "kd-tree leaf size")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--output", o->output, "Output CSV of queryIndex,neighborIndex,distance")->required();
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<KMeansOptions>();
    auto *s = subcommand(app, outcome, "kmeans", "Lloyd's k-means from a seeded Forgy start", o, run_kmeans);
    s->add_option("--data", o->data, "Input data CSV")->required();
    s->add_option("--clusters", o->clusters, "Number of clusters k")->required()->check(CLI::PositiveNumber);
    s->add_option("--max-iterations", o->maxIterations, "Iteration budget")->capture_default_str()->check(
        CLI::PositiveNumber);
    s->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    s->add_option("--centroids", o->centroids, "Output centroid CSV")->required();
    s->add_option("--assignments", o->assignments, "Output cluster index per point");
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<MstOptions>();
    auto *s = subcommand(app, outcome, "mst", "Minimum spanning tree of the complete graph (Boruvka)", o, run_mst);
    s->add_option("--data", o->data, "Input data CSV")->required();
    s->add_option("--metric", o->metric, "euclidean, manhattan, chebyshev, lp:<p> or lp:inf")->capture_default_str();
    s->add_option("--output", o->output, "Output edge list CSV of a,b,weight")->required();
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<LogRegOptions>();
    auto *s = subcommand(app, outcome, "logreg", "Train logistic regression and report training accuracy", o,
                         run_logreg);
    s->add_option("--data", o->data, "Training data CSV")->required();
    s->add_option("--labels", o->labels, "Training labels (class indices)")->required();
    s->add_option("--num-classes", o->numClasses, "Number of classes (default: largest label + 1)")
        ->check(CLI::PositiveNumber);
    s->add_option("--optimizer", o->optimizer, "gd, sgd or adam")->capture_default_str();
    s->add_option("--step-size", o->stepSize, "Step size (default: 0.5 for gd, 0.01 otherwise)");
    s->add_option("--max-iterations", o->maxIterations, "Iterations, or epochs for sgd/adam (default: 10000 or 1000)");
    s->add_option("--tolerance", o->tolerance, "Stop when the objective changes less than this (default: 1e-8)");
    s->add_option("--lambda", o->lambda, "L2 penalty on the weights")->capture_default_str();
    s->add_option("--seed", o->seed, "Random seed for sgd/adam")->capture_default_str();
    s->add_option("--model", o->model, "Optional output model file");
    add_force(s, o->force);
  }
  {
    auto o = std::make_shared<CovertypeOptions>();
    auto *s = subcommand(app, outcome, "covertype-demo",
                         "Load, split 80/20, train a default decision tree and print test accuracy", o, run_covertype);
    s->add_option("--data", o->data, "Covertype data CSV")->required();
    s->add_option("--labels", o->labels, "Covertype labels file")->required();
    s->add_option("--seed", o->seed, "Random seed for the split")->capture_default_str();
  }
}

} // namespace uml::cli
