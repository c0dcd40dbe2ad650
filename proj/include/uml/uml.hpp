#ifndef UML_UML_HPP
#define UML_UML_HPP

#include "uml/core/error.hpp"
#include "uml/core/random.hpp"
#include "uml/core/types.hpp"

#include "uml/data/accuracy.hpp"
#include "uml/data/csv.hpp"
#include "uml/data/labels.hpp"
#include "uml/data/split.hpp"

#include "uml/metrics/kernels.hpp"
#include "uml/metrics/lp_metric.hpp"
#include "uml/metrics/metric_selector.hpp"

#include "uml/spatial/kd_tree.hpp"
#include "uml/spatial/neighbor_search.hpp"

#include "uml/optimizers/adam.hpp"
#include "uml/optimizers/finite_difference.hpp"
#include "uml/optimizers/function.hpp"
#include "uml/optimizers/gradient_descent.hpp"
#include "uml/optimizers/objectives.hpp"
#include "uml/optimizers/sgd.hpp"
#include "uml/optimizers/simulated_annealing.hpp"

#include "uml/classifiers/classifier.hpp"
#include "uml/classifiers/decision_tree.hpp"
#include "uml/classifiers/logistic_regression.hpp"
#include "uml/classifiers/model_io.hpp"
#include "uml/classifiers/naive_bayes.hpp"
#include "uml/classifiers/perceptron.hpp"
#include "uml/classifiers/registry.hpp"

#include "uml/clustering/boruvka_mst.hpp"
#include "uml/clustering/kmeans.hpp"

#include "uml/workflows/covertype.hpp"

#endif // UML_UML_HPP
