#ifndef UML_CORE_TYPES_HPP
#define UML_CORE_TYPES_HPP

#include <Eigen/Core>

#include <cstddef>

namespace uml {

/// Dense dataset, dimensions x points. Point j is column j.
template <typename Scalar>
using DataMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-point class indices. Every entry is expected to lie in [0, numClasses).
using LabelRow = Eigen::Matrix<std::size_t, 1, Eigen::Dynamic>;

using Matrix = DataMatrix<double>;
using VectorXd = Vector<double>;

} // namespace uml

#endif // UML_CORE_TYPES_HPP
