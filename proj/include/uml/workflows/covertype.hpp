#ifndef UML_WORKFLOWS_COVERTYPE_HPP
#define UML_WORKFLOWS_COVERTYPE_HPP

#include "uml/core/types.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace uml::workflows {

inline constexpr std::size_t kCovertypeClasses = 7;
inline constexpr double kCovertypeTestRatio = 0.2;

struct CovertypeReport {
  double accuracy = 0;
  std::size_t trainPoints = 0;
  std::size_t testPoints = 0;
  std::size_t treeNodes = 0;
  /// "Decision tree classifier accuracy on test set: <percent>."
  std::string line;
};

/// Failure inside one pipeline stage; what() is prefixed with the stage name.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string &what)
      : std::runtime_error(stage + " stage: " + what), stage_(std::move(stage)) {}
  const std::string &stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

/// Formats the report line with the percentage to 4 decimal places.
std::string format_accuracy_line(double accuracy);

/// encode labels -> split 80/20 -> default decision tree -> classify -> accuracy.
/// Requires exactly seven distinct label values.
CovertypeReport run_covertype_demo(const Matrix &data, const std::vector<std::uint64_t> &rawLabels,
                                   std::uint64_t seed);

/// Loads both files first; load failures are reported as the "load" stage.
CovertypeReport run_covertype_demo(const std::filesystem::path &dataPath, const std::filesystem::path &labelsPath,
                                   std::uint64_t seed);

} // namespace uml::workflows

#endif // UML_WORKFLOWS_COVERTYPE_HPP
