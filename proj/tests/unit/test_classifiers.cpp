#include "doctest.h"

#include "common/synthetic.hpp"
#include "uml/classifiers/registry.hpp"
#include "uml/data/accuracy.hpp"
#include "uml/optimizers/finite_difference.hpp"
#include "uml/optimizers/simulated_annealing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace uml;
using namespace uml::classifiers;

namespace {

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v)
    m(0, i++) = x;
  return m;
}

LabelRow labels(std::initializer_list<std::size_t> v) {
  LabelRow l(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto x : v)
    l(i++) = x;
  return l;
}

Matrix xor_points() {
  Matrix m(2, 4);
  m << 0, 0, 1, 1, 0, 1, 0, 1;
  return m;
}
const LabelRow kXorLabels = labels({0, 1, 1, 0});

template <typename Model>
double training_accuracy(const Model &m, const Matrix &data, const LabelRow &truth) {
  LabelRow p;
  m.classify(data, p);
  return data::accuracy(p, truth);
}

double gini(const std::vector<std::size_t> &points, const LabelRow &y, std::size_t numClasses) {
  std::vector<double> counts(numClasses, 0.0);
  for (auto j : points)
    counts[y(static_cast<Eigen::Index>(j))] += 1;
  double g = 1;
  for (double c : counts)
    g -= (c / double(points.size())) * (c / double(points.size()));
  return g;
}

// Plain Gini gain from scratch: impurity(parent) - weighted child impurities.
double naive_gain(const std::vector<std::size_t> &points, const Matrix &x, const LabelRow &y, std::size_t numClasses,
                  std::size_t f, double threshold, std::size_t minLeaf, bool &valid) {
  std::vector<std::size_t> l, r;
  for (auto j : points)
    (x(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(j)) < threshold ? l : r).push_back(j);
  valid = l.size() >= minLeaf && r.size() >= minLeaf;
  if (!valid)
    return 0;
  const double n = double(points.size());
  return gini(points, y, numClasses) - (double(l.size()) * gini(l, y, numClasses) + double(r.size()) * gini(r, y, numClasses)) / n;
}

// For every internal node, re-scan every (feature, midpoint) candidate over the
// points that reach it and check that no candidate beats the chosen gain.
void audit_splits(const DecisionTree<> &tree, const Matrix &x, const LabelRow &y, std::size_t numClasses,
                  std::size_t minLeaf) {
  const auto &nodes = tree.nodes();
  std::vector<std::vector<std::size_t>> reach(nodes.size());
  reach[0].resize(static_cast<std::size_t>(x.cols()));
  std::iota(reach[0].begin(), reach[0].end(), std::size_t{0});
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto &node = nodes[id];
    if (node.isLeaf())
      continue;
    bool valid = false;
    const double chosen =
        naive_gain(reach[id], x, y, numClasses, node.feature, node.threshold, minLeaf, valid);
    REQUIRE(valid);
    for (Eigen::Index f = 0; f < x.rows(); ++f) {
      std::set<double> distinct;
      for (auto j : reach[id])
        distinct.insert(x(f, static_cast<Eigen::Index>(j)));
      for (auto it = distinct.begin(); std::next(it) != distinct.end(); ++it) {
        const double t = (*it + *std::next(it)) / 2;
        const double g = naive_gain(reach[id], x, y, numClasses, static_cast<std::size_t>(f), t, minLeaf, valid);
        if (valid)
          CHECK(chosen >= g - 1e-12);
      }
    }
    for (auto j : reach[id])
      reach[x(static_cast<Eigen::Index>(node.feature), static_cast<Eigen::Index>(j)) < node.threshold ? node.left
                                                                                                       : node.right]
          .push_back(j);
  }
}

std::map<const void *, std::size_t> leaf_counts(const DecisionTree<> &tree, const Matrix &x) {
  std::map<const void *, std::size_t> counts;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    ++counts[&tree.probabilities(x.col(j))];
  return counts;
}

} // namespace

TEST_CASE("decision tree on pure labels is a single leaf") {
  DecisionTree<> tree(1);
  tree.train(uml::testing::uniform_points(3, 20, 1), LabelRow::Constant(20, 2), 4);
  CHECK(tree.numLeaves() == 1);
  CHECK(tree.depth() == 0);
  const auto &p = tree.probabilities(Vector<double>::Zero(3));
  CHECK(p(2) == 1.0);
  CHECK(p.sum() == 1.0);
  CHECK(tree.classify(Vector<double>::Constant(3, 100.0)) == 2);
}

TEST_CASE("decision tree splits 1-D data at 1.5") {
  DecisionTree<> tree(1);
  const Matrix x = row({0, 1, 2, 3});
  tree.train(x, labels({0, 0, 1, 1}), 2);
  REQUIRE(tree.nodes().size() == 3);
  CHECK(tree.nodes()[0].feature == 0);
  CHECK(tree.nodes()[0].threshold == 1.5);
  CHECK(training_accuracy(tree, x, labels({0, 0, 1, 1})) == 1.0);
}

TEST_CASE("decision tree on XOR") {
  DecisionTree<> tree(1);
  const Matrix x = xor_points();
  tree.train(x, kXorLabels, 2);
  CHECK(tree.depth() == 2);
  CHECK(tree.numLeaves() == 4);
  CHECK(training_accuracy(tree, x, kXorLabels) == 1.0);
  // Every first-level split has zero gain; ties resolve to feature 0 at 0.5.
  CHECK(tree.nodes()[0].feature == 0);
  CHECK(tree.nodes()[0].threshold == 0.5);
  Vector<double> p(2);
  p << 1, 0;
  CHECK(tree.classify(p) == 1);
  p << 1, 1;
  CHECK(tree.classify(p) == 0);
}

TEST_CASE("decision tree threshold routing is strictly less") {
  DecisionTree<> tree(1);
  tree.train(row({0, 1}), labels({0, 1}), 2);
  CHECK(tree.classify(row({0.5}).col(0)) == 1);
  CHECK(tree.classify(row({0.4999}).col(0)) == 0);
}

TEST_CASE("decision tree structural invariants on random data") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto blobs = uml::testing::gaussian_blobs(3, 300, 3, 1.5, seed);
    for (const std::size_t minLeaf : {1u, 5u, 10u}) {
      for (const std::size_t maxDepth : {0u, 2u, 4u}) {
        DecisionTree<> tree(minLeaf, maxDepth);
        tree.train(blobs.data, blobs.labels, 3);
        if (maxDepth > 0)
          CHECK(tree.depth() <= maxDepth);
        for (const auto &n : tree.nodes()) {
          if (!n.isLeaf())
            continue;
          CHECK((n.probabilities.array() >= 0).all());
          CHECK(std::abs(n.probabilities.sum() - 1.0) <= 1e-12);
        }
        for (const auto &[leaf, count] : leaf_counts(tree, blobs.data))
          CHECK(count >= minLeaf);
        CHECK(leaf_counts(tree, blobs.data).size() == tree.numLeaves());
      }
    }
  }
}

TEST_CASE("decision tree split choice beats every candidate") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(10 + seed % 41);
    Matrix x = uml::testing::uniform_points(3, n, seed, 0, 4);
    // Coarse grid so that ties and repeated values show up.
    x = x.array().round();
    LabelRow y(n);
    for (Eigen::Index j = 0; j < n; ++j)
      y(j) = uniform_index(rng, 3);
    const std::size_t minLeaf = 1 + seed % 3;
    DecisionTree<> tree(minLeaf);
    tree.train(x, y, 3);
    audit_splits(tree, x, y, 3, minLeaf);
  }
}

TEST_CASE("decision tree fits distinct points exactly with minimum leaf size 1") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix x = uml::testing::uniform_points(4, 400, seed);
    Rng rng(seed + 100);
    LabelRow y(400);
    for (Eigen::Index j = 0; j < 400; ++j)
      y(j) = uniform_index(rng, 5);
    DecisionTree<> tree(1);
    tree.train(x, y, 5);
    CHECK(training_accuracy(tree, x, y) == 1.0);
  }
}

TEST_CASE("decision tree keeps identical conflicting points in one leaf") {
  DecisionTree<> tree(1);
  const Matrix x = row({1, 1, 1, 2});
  tree.train(x, labels({0, 1, 1, 0}), 2);
  CHECK(tree.numLeaves() == 2);
  CHECK(tree.classify(row({1}).col(0)) == 1);
  const auto &p = tree.probabilities(row({1}).col(0));
  CHECK(p(0) == doctest::Approx(1.0 / 3));
}

TEST_CASE("decision tree ties in leaf probability go to the lower class") {
  DecisionTree<> tree(10);
  tree.train(row({0, 1, 2, 3}), labels({1, 0, 0, 1}), 2);
  CHECK(tree.numLeaves() == 1);
  CHECK(tree.classify(row({2}).col(0)) == 0);
}

TEST_CASE("decision tree in single precision") {
  const auto blobs = uml::testing::gaussian_blobs(2, 200, 2, 6.0, 3);
  const Eigen::MatrixXf x = blobs.data.cast<float>();
  DecisionTree<float> tree;
  tree.train(x, blobs.labels, 2);
  LabelRow p;
  tree.classify(x, p);
  CHECK(data::accuracy(p, blobs.labels) >= 0.95);
}

TEST_CASE("naive Bayes symmetric boundary") {
  NaiveBayes<> nb;
  nb.train(row({-1.5, -0.5, 0.5, 1.5}), labels({0, 0, 1, 1}), 2);
  CHECK(nb.classify(row({-0.5}).col(0)) == 0);
  CHECK(nb.classify(row({0.5}).col(0)) == 1);
  CHECK(nb.priors().sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("naive Bayes boundary sits at the midpoint of the means") {
  // Means -1 and 3, equal population variance 1.25, equal priors.
  NaiveBayes<> nb;
  nb.train(row({-2.5, -1.5, -0.5, 0.5, 1.5, 2.5, 3.5, 4.5}), labels({0, 0, 0, 0, 1, 1, 1, 1}), 2);
  CHECK(nb.means()(0, 0) == -1.0);
  CHECK(nb.means()(0, 1) == 3.0);
  CHECK(nb.variances()(0, 0) == nb.variances()(0, 1));
  double lo = -1, hi = 3;
  Vector<double> p(1);
  while (hi - lo > 1e-12) {
    p(0) = (lo + hi) / 2;
    (nb.classify(p) == 0 ? lo : hi) = p(0);
  }
  CHECK(std::abs((lo + hi) / 2 - 1.0) < 1e-9);
}

TEST_CASE("naive Bayes degenerate inputs") {
  NaiveBayes<> single;
  single.train(uml::testing::uniform_points(2, 10, 4), LabelRow::Constant(10, 0), 1);
  CHECK(single.classify(Vector<double>::Constant(2, -50.0)) == 0);

  Matrix x(2, 6);
  x << 1, 1, 1, 1, 1, 1, 0, 1, 2, 10, 11, 12;
  NaiveBayes<> constant;
  constant.train(x, labels({0, 0, 0, 1, 1, 1}), 2);
  CHECK(constant.variances()(0, 0) == NaiveBayes<>::kVarianceFloor);
  Vector<double> q(2);
  q << 1, 11;
  CHECK(constant.classify(q) == 1);
  CHECK(std::isfinite(constant.logScores(q)(1)));

  NaiveBayes<> missing;
  missing.train(row({0, 1, 2}), labels({0, 0, 2}), 3);
  CHECK(missing.priors()(1) == 0.0);
  for (double v : {-5.0, 0.0, 1.0, 2.0, 8.0})
    CHECK(missing.classify(row({v}).col(0)) != 1);
}

TEST_CASE("naive Bayes ties go to class 0") {
  NaiveBayes<> nb;
  nb.train(row({0, 1, 0, 1}), labels({0, 0, 1, 1}), 2);
  for (double v : {-3.0, 0.5, 7.0})
    CHECK(nb.classify(row({v}).col(0)) == 0);
}

TEST_CASE("naive Bayes on two blobs") {
  const auto blobs = uml::testing::gaussian_blobs(2, 500, 2, 4.0, 11);
  NaiveBayes<> nb;
  nb.train(blobs.data, blobs.labels, 2);
  CHECK(training_accuracy(nb, blobs.data, blobs.labels) >= 0.95);
  CHECK(nb.classify(nb.means().col(0)) == 0);
  CHECK(nb.classify(nb.means().col(1)) == 1);
  CHECK((nb.variances().array() >= NaiveBayes<>::kVarianceFloor).all());
}

TEST_CASE("perceptron") {
  Perceptron<> p;
  const Matrix x = row({-3, -2, -1, 1, 2, 3});
  const LabelRow y = labels({0, 0, 0, 1, 1, 1});
  p.train(x, y, 2);
  CHECK(p.converged());
  CHECK(training_accuracy(p, x, y) == 1.0);
  CHECK(p.weights().rows() == 2);
  CHECK(p.weights().cols() == 2);
  CHECK(p.weights().allFinite());

  Perceptron<> quiet;
  quiet.train(x, LabelRow::Zero(6), 2);
  CHECK(quiet.converged());
  CHECK(quiet.updates() == 0);
  CHECK(quiet.epochsUsed() == 1);

  Perceptron<> stuck(50);
  stuck.train(xor_points(), kXorLabels, 2);
  CHECK_FALSE(stuck.converged());
  CHECK(stuck.epochsUsed() == 50);
  CHECK_THROWS_AS(Perceptron<>(0), InvalidArgument);
}

TEST_CASE("logistic regression reaches 0.99 with every optimizer") {
  const auto blobs = uml::testing::gaussian_blobs(2, 400, 2, 6.0, 5);
  for (const auto choice : {OptimizerChoice::GradientDescent, OptimizerChoice::Sgd, OptimizerChoice::Adam}) {
    auto cfg = LogisticRegression<>::defaultConfig();
    if (choice != OptimizerChoice::GradientDescent) {
      cfg.stepSize = 0.01;
      cfg.maxIterations = 200;
    }
    LogisticRegression<> lr(choice, cfg);
    lr.train(blobs.data, blobs.labels, 2);
    CHECK(training_accuracy(lr, blobs.data, blobs.labels) >= 0.99);
    CHECK(lr.weights().allFinite());
    CHECK(lr.weights().rows() == 1);
  }
  LogisticRegression<> viaTemplate;
  auto cfg = LogisticRegression<>::defaultConfig();
  cfg.maxIterations = 500;
  viaTemplate.train(blobs.data, blobs.labels, 2, optim::SimulatedAnnealing(cfg));
  CHECK(viaTemplate.trainedWith() == "sa");
}

TEST_CASE("logistic regression with identical labels") {
  const Matrix x = uml::testing::uniform_points(2, 30, 6);
  for (const std::size_t c : {0u, 1u}) {
    LogisticRegression<> lr;
    lr.train(x, LabelRow::Constant(30, c), 2);
    CHECK(training_accuracy(lr, x, LabelRow::Constant(30, c)) == 1.0);
  }
  LogisticRegression<> one;
  one.train(x, LabelRow::Zero(30), 1);
  CHECK(one.classify(x.col(0)) == 0);
}

TEST_CASE("unregularized logistic regression reaches a stationary point with gd") {
  const auto blobs = uml::testing::gaussian_blobs(2, 300, 2, 1.5, 9);
  auto cfg = LogisticRegression<>::defaultConfig();
  cfg.maxIterations = 50000;
  cfg.tolerance = 1e-12;
  LogisticRegression<> lr(OptimizerChoice::GradientDescent, cfg, 0.0);
  lr.train(blobs.data, blobs.labels, 2);
  Vector<double> targets = blobs.labels.cast<double>().transpose();
  const LogisticRegressionFunction<> f(blobs.data, targets, 0.0);
  const Vector<double> theta = lr.weights().row(0).transpose();
  CHECK(optim::finite_difference_gradient(f, theta).norm() < 1e-3);
}

TEST_CASE("logistic objective gradient matches finite differences") {
  const auto blobs = uml::testing::gaussian_blobs(3, 60, 2, 2.0, 13);
  Vector<double> targets = blobs.labels.cast<double>().transpose();
  const LogisticRegressionFunction<> f(blobs.data, targets, 0.01);
  Rng rng(4);
  Vector<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector<double> theta = uml::testing::uniform_points(4, 1, rng(), -2, 2);
    f.gradient(theta, g);
    const Vector<double> fd = optim::finite_difference_gradient(f, theta);
    CHECK((g - fd).norm() / std::max(1.0, fd.norm()) < 1e-4);
    double sum = 0;
    for (std::size_t i = 0; i < f.numTerms(); ++i)
      sum += f.evaluateTerm(theta, i);
    CHECK(sum == doctest::Approx(f.evaluate(theta)).epsilon(1e-10));
  }
}

TEST_CASE("logistic regression one-vs-rest") {
  const auto blobs = uml::testing::gaussian_blobs(2, 300, 3, 8.0, 21);
  Matrix x = blobs.data;
  // Move blob 1 off the diagonal so every class is linearly separable from the rest.
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    if (blobs.labels(j) == 1)
      x(1, j) -= 16;
  LogisticRegression<> lr;
  lr.train(x, blobs.labels, 3);
  CHECK(lr.weights().rows() == 3);
  CHECK(lr.lastObjectives().size() == 3);
  CHECK(training_accuracy(lr, x, blobs.labels) >= 0.95);
  CHECK_THROWS_AS(parse_optimizer("lbfgs"), InvalidArgument);
  CHECK(parse_optimizer("adam") == OptimizerChoice::Adam);
}

TEST_CASE("batch classification equals per-point classification") {
  const auto blobs = uml::testing::gaussian_blobs(3, 200, 3, 2.0, 17);
  const Matrix queries = uml::testing::uniform_points(3, 100, 18, -3, 7);
  for (const auto name : kClassifierNames) {
    AnyClassifier c = make_classifier(name);
    std::visit(
        [&](auto &model) {
          model.train(blobs.data, blobs.labels, 3);
          LabelRow batch;
          model.classify(queries, batch);
          REQUIRE(batch.size() == 100);
          for (Eigen::Index j = 0; j < 100; ++j) {
            CHECK(batch(j) == model.classify(queries.col(j)));
            CHECK(batch(j) < 3);
          }
        },
        c);
  }
}

TEST_CASE("generic harness runs every classifier") {
  const auto train = uml::testing::gaussian_blobs(2, 400, 2, 6.0, 31);
  const auto test = uml::testing::gaussian_blobs(2, 200, 2, 6.0, 32);
  for (const auto name : kClassifierNames) {
    CAPTURE(name);
    CHECK(train_and_score(name, train.data, train.labels, test.data, test.labels, 2) >= 0.90);
  }
  try {
    make_classifier("random_forest");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument &e) {
    const std::string msg = e.what();
    for (const auto name : kClassifierNames)
      CHECK(msg.find(name) != std::string::npos);
  }

  DecisionTree<> direct;
  direct.train(train.data, train.labels, 2);
  LabelRow p;
  direct.classify(test.data, p);
  CHECK(train_and_score("decision_tree", train.data, train.labels, test.data, test.labels, 2) ==
        data::accuracy(p, test.labels));
}

TEST_CASE("classifiers reject misuse") {
  const Vector<double> point = Vector<double>::Zero(2);
  CHECK_THROWS_AS(DecisionTree<>().classify(point), NotTrained);
  CHECK_THROWS_AS(NaiveBayes<>().classify(point), NotTrained);
  CHECK_THROWS_AS(Perceptron<>().classify(point), NotTrained);
  CHECK_THROWS_AS(LogisticRegression<>().classify(point), NotTrained);

  const auto blobs = uml::testing::gaussian_blobs(2, 40, 2, 4.0, 1);
  const Vector<double> wrong = Vector<double>::Zero(3);
  for (const auto name : kClassifierNames) {
    AnyClassifier c = make_classifier(name);
    std::visit(
        [&](auto &model) {
          CHECK_THROWS_AS(model.train(Matrix(2, 0), LabelRow(0), 2), InvalidArgument);
          CHECK_THROWS_AS(model.train(blobs.data, blobs.labels, 1), InvalidArgument);
          CHECK_THROWS_AS(model.train(blobs.data, blobs.labels.head(10), 2), InvalidArgument);
          model.train(blobs.data, blobs.labels, 2);
          CHECK_THROWS_AS(model.classify(wrong), InvalidArgument);
        },
        c);
  }
}
