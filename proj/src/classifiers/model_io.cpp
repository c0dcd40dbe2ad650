#include "uml/classifiers/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace uml::classifiers {
namespace {

std::string real(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_header(std::ostream &out, const char *type) {
  out << "uml-model " << type << ' ' << kModelFormatVersion << '\n';
}

// Tokenized reader over the payload with line tracking for error messages.
class Reader {
public:
  explicit Reader(std::istream &in) : in_(in) {}

  void header(const std::string &type) {
    const std::vector<std::string> t = line();
    if (t.size() != 3 || t[0] != "uml-model")
      fail("missing 'uml-model <type> <version>' header");
    if (t[1] != type)
      fail("expected model type '" + type + "', found '" + t[1] + "'");
    if (t[2] != std::to_string(kModelFormatVersion))
      fail("unsupported model version '" + t[2] + "'");
  }

  std::vector<std::string> line() {
    std::string text;
    if (!std::getline(in_, text))
      fail("unexpected end of model file");
    ++lineNo_;
    if (!text.empty() && text.back() == '\r')
      text.pop_back();
    std::istringstream ss(text);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;)
      tokens.push_back(tok);
    return tokens;
  }

  /// Reads "<key> <value>" and returns the value as an unsigned integer.
  std::size_t keyed(const std::string &key) {
    const std::vector<std::string> t = line();
    if (t.size() != 2 || t[0] != key)
      fail("expected '" + key + " <value>'");
    return count(t[1]);
  }

  std::string keyedString(const std::string &key) {
    const std::vector<std::string> t = line();
    if (t.size() != 2 || t[0] != key)
      fail("expected '" + key + " <value>'");
    return t[1];
  }

  /// Reads "<key> v1 ... vn".
  std::vector<double> keyedReals(const std::string &key, std::size_t n) {
    const std::vector<std::string> t = line();
    if (t.size() != n + 1 || t[0] != key)
      fail("expected '" + key + "' followed by " + std::to_string(n) + " values");
    std::vector<double> v;
    for (std::size_t i = 1; i < t.size(); ++i)
      v.push_back(number(t[i]));
    return v;
  }

  void end() {
    const std::vector<std::string> t = line();
    if (t.size() != 1 || t[0] != "end")
      fail("expected 'end'");
  }

  std::size_t count(const std::string &tok) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      fail("bad integer '" + tok + "'");
    return v;
  }

  double number(const std::string &tok) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
      fail("bad number '" + tok + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string &what) const {
    throw ModelFormatError("model line " + std::to_string(lineNo_) + ": " + what);
  }

private:
  std::istream &in_;
  std::size_t lineNo_ = 0;
};

template <typename Fn>
auto rethrow_as_format_error(Reader &r, Fn &&fn) {
  try {
    return fn();
  } catch (const InvalidArgument &e) {
    r.fail(e.what());
  }
}

void write_reals(std::ostream &out, const char *key, const auto &values) {
  out << key;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    out << ' ' << real(values(i));
  out << '\n';
}

Eigen::RowVectorXd to_row(const std::vector<double> &v) {
  return Eigen::Map<const Eigen::RowVectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Rows are read before anything is sized from the header counts, so a corrupt
// count fails on a short file instead of allocating.
Matrix read_rows(Reader &r, const std::string &key, std::size_t rows, std::size_t width) {
  std::vector<std::vector<double>> read;
  for (std::size_t i = 0; i < rows; ++i)
    read.push_back(r.keyedReals(key, width));
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows; ++i)
    m.row(static_cast<Eigen::Index>(i)) = to_row(read[i]);
  return m;
}

} // namespace

void save_model(std::ostream &out, const DecisionTree<> &model) {
  if (!model.trained())
    throw NotTrained();
  write_header(out, "decision_tree");
  out << "num_dims " << model.numDims() << '\n'
      << "num_classes " << model.numClasses() << '\n'
      << "min_leaf_size " << model.minLeafSize() << '\n'
      << "max_depth " << model.maxDepth() << '\n'
      << "nodes " << model.nodes().size() << '\n';
  for (const auto &node : model.nodes()) {
    if (node.isLeaf())
      write_reals(out, "leaf", node.probabilities);
    else
      out << "split " << node.feature << ' ' << real(node.threshold) << ' ' << node.left << ' ' << node.right << '\n';
  }
  out << "end\n";
}

DecisionTree<> load_decision_tree(std::istream &in) {
  Reader r(in);
  r.header("decision_tree");
  const std::size_t dims = r.keyed("num_dims");
  const std::size_t classes = r.keyed("num_classes");
  const std::size_t minLeaf = r.keyed("min_leaf_size");
  const std::size_t maxDepth = r.keyed("max_depth");
  const std::size_t count = r.keyed("nodes");
  std::vector<DecisionTree<>::Node> nodes;
  for (std::size_t i = 0; i < count; ++i) {
    const std::vector<std::string> t = r.line();
    auto &node = nodes.emplace_back();
    if (!t.empty() && t[0] == "split" && t.size() == 5) {
      node.feature = r.count(t[1]);
      node.threshold = r.number(t[2]);
      node.left = r.count(t[3]);
      node.right = r.count(t[4]);
    } else if (!t.empty() && t[0] == "leaf" && t.size() == classes + 1) {
      node.probabilities.resize(static_cast<Eigen::Index>(classes));
      for (std::size_t c = 0; c < classes; ++c)
        node.probabilities(static_cast<Eigen::Index>(c)) = r.number(t[c + 1]);
    } else {
      r.fail("expected 'split <feature> <threshold> <left> <right>' or 'leaf' with " + std::to_string(classes) +
             " probabilities");
    }
  }
  r.end();
  return rethrow_as_format_error(
      r, [&] { return DecisionTree<>::fromNodes(dims, classes, minLeaf, maxDepth, std::move(nodes)); });
}

void save_model(std::ostream &out, const NaiveBayes<> &model) {
  if (!model.trained())
    throw NotTrained();
  write_header(out, "naive_bayes");
  out << "num_dims " << model.numDims() << '\n' << "num_classes " << model.numClasses() << '\n';
  write_reals(out, "priors", model.priors());
  for (Eigen::Index c = 0; c < model.means().cols(); ++c)
    write_reals(out, "mean", model.means().col(c));
  for (Eigen::Index c = 0; c < model.variances().cols(); ++c)
    write_reals(out, "variance", model.variances().col(c));
  out << "end\n";
}

NaiveBayes<> load_naive_bayes(std::istream &in) {
  Reader r(in);
  r.header("naive_bayes");
  const std::size_t dims = r.keyed("num_dims");
  const std::size_t classes = r.keyed("num_classes");
  const Eigen::VectorXd priors = to_row(r.keyedReals("priors", classes)).transpose();
  const Matrix means = read_rows(r, "mean", classes, dims).transpose();
  const Matrix variances = read_rows(r, "variance", classes, dims).transpose();
  r.end();
  return rethrow_as_format_error(r, [&] { return NaiveBayes<>::fromParameters(priors, means, variances); });
}

void save_model(std::ostream &out, const Perceptron<> &model) {
  if (model.weights().size() == 0)
    throw NotTrained();
  write_header(out, "perceptron");
  out << "num_dims " << model.numDims() << '\n' << "num_classes " << model.numClasses() << '\n';
  for (Eigen::Index c = 0; c < model.weights().rows(); ++c)
    write_reals(out, "weights", model.weights().row(c));
  out << "end\n";
}

Perceptron<> load_perceptron(std::istream &in) {
  Reader r(in);
  r.header("perceptron");
  const std::size_t dims = r.keyed("num_dims");
  const std::size_t classes = r.keyed("num_classes");
  const Matrix w = read_rows(r, "weights", classes, dims + 1);
  r.end();
  return rethrow_as_format_error(r, [&] { return Perceptron<>::fromWeights(w); });
}

void save_model(std::ostream &out, const LogisticRegression<> &model) {
  if (!model.trained())
    throw NotTrained();
  if (model.numClasses() < 2)
    throw InvalidArgument("a single-class logistic regression model has no weights to save");
  write_header(out, "logistic_regression");
  out << "num_dims " << model.numDims() << '\n'
      << "num_classes " << model.numClasses() << '\n'
      << "lambda " << real(model.lambda()) << '\n'
      << "optimizer " << model.trainedWith() << '\n'
      << "models " << model.weights().rows() << '\n';
  for (Eigen::Index m = 0; m < model.weights().rows(); ++m)
    write_reals(out, "weights", model.weights().row(m));
  out << "end\n";
}

LogisticRegression<> load_logistic_regression(std::istream &in) {
  Reader r(in);
  r.header("logistic_regression");
  const std::size_t dims = r.keyed("num_dims");
  const std::size_t classes = r.keyed("num_classes");
  const double lambda = r.number(r.keyedString("lambda"));
  const std::string optimizer = r.keyedString("optimizer");
  const std::size_t models = r.keyed("models");
  const Matrix w = read_rows(r, "weights", models, dims + 1);
  r.end();
  return rethrow_as_format_error(r, [&] { return LogisticRegression<>::fromWeights(w, classes, lambda, optimizer); });
}

template <typename Model>
void save_model_file(const std::filesystem::path &path, const Model &model) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw DataError(path.string(), 0, "cannot open model file for writing");
  save_model(out, model);
  if (!out)
    throw DataError(path.string(), 0, "write failure");
}

template void save_model_file(const std::filesystem::path &, const DecisionTree<> &);
template void save_model_file(const std::filesystem::path &, const NaiveBayes<> &);
template void save_model_file(const std::filesystem::path &, const Perceptron<> &);
template void save_model_file(const std::filesystem::path &, const LogisticRegression<> &);

DecisionTree<> load_decision_tree_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DataError(path.string(), 0, "cannot open model file");
  return load_decision_tree(in);
}

} // namespace uml::classifiers
