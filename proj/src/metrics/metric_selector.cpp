#include "uml/metrics/metric_selector.hpp"

#include "uml/core/error.hpp"

#include <charconv>
#include <cmath>

namespace uml::metrics {

AnyMetric parse_metric(std::string_view selector) {
  if (selector == "euclidean")
    return EuclideanDistance{};
  if (selector == "manhattan")
    return ManhattanDistance{};
  if (selector == "chebyshev")
    return ChebyshevDistance{};
  if (selector.starts_with("lp:")) {
    const std::string_view arg = selector.substr(3);
    if (arg == "inf")
      return LpMetric(std::numeric_limits<double>::infinity());
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
    if (ec == std::errc() && ptr == arg.data() + arg.size() && std::isfinite(p))
      return LpMetric(p);
  }
  throw InvalidArgument("unknown metric '" + std::string(selector) +
                        "' (expected euclidean, manhattan, chebyshev or lp:<p>)");
}

std::string metric_name(const AnyMetric &metric) {
  switch (metric.index()) {
  case 0:
    return "manhattan";
  case 1:
    return "euclidean";
  case 2:
    return "chebyshev";
  default: {
    const double p = std::get<LpMetric>(metric).p();
    return std::isinf(p) ? std::string("lp:inf") : "lp:" + std::to_string(p);
  }
  }
}

} // namespace uml::metrics
