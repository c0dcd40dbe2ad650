#ifndef UML_DATA_ACCURACY_HPP
#define UML_DATA_ACCURACY_HPP

#include "uml/core/error.hpp"
#include "uml/core/types.hpp"

namespace uml::data {

/// Fraction of positions where the two label rows agree.
inline double accuracy(const LabelRow &predictions, const LabelRow &truth) {
  if (predictions.size() != truth.size())
    throw InvalidArgument("accuracy: length mismatch");
  if (truth.size() == 0)
    throw InvalidArgument("accuracy: empty input");
  const auto correct = (predictions.array() == truth.array()).count();
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

} // namespace uml::data

#endif // UML_DATA_ACCURACY_HPP
