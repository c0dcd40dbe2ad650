#ifndef UML_METRICS_METRIC_SELECTOR_HPP
#define UML_METRICS_METRIC_SELECTOR_HPP

#include "uml/metrics/lp_metric.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace uml::metrics {

/// Run-time choice among the shipped metrics. Consumers std::visit it and get
/// the statically typed metric inside.
using AnyMetric = std::variant<ManhattanDistance, EuclideanDistance, ChebyshevDistance, LpMetric>;

/// Accepts "euclidean", "manhattan", "chebyshev" or "lp:<p>" (p >= 1, or "inf").
/// Throws InvalidArgument otherwise.
AnyMetric parse_metric(std::string_view selector);

std::string metric_name(const AnyMetric &metric);

} // namespace uml::metrics

#endif // UML_METRICS_METRIC_SELECTOR_HPP
