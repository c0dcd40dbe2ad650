#ifndef UML_CORE_ERROR_HPP
#define UML_CORE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uml {

/// Precondition violation by the caller (bad sizes, out-of-range parameters).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable input data. Carries the file path and the 1-based
/// line number when one applies (0 otherwise).
class DataError : public std::runtime_error {
public:
  DataError(const std::string &path, std::size_t line, const std::string &what)
      : std::runtime_error(format(path, line, what)), path_(path), line_(line) {}

  const std::string &path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

private:
  static std::string format(const std::string &path, std::size_t line, const std::string &what) {
    std::string msg = path;
    if (line > 0)
      msg += ":" + std::to_string(line);
    return msg + ": " + what;
  }

  std::string path_;
  std::size_t line_;
};

/// An optimizer met a non-finite objective or gradient.
class OptimizationError : public std::runtime_error {
public:
  OptimizationError(std::size_t iteration, const std::string &what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

private:
  std::size_t iteration_;
};

/// A model was used before train() or load.
class NotTrained : public std::logic_error {
public:
  NotTrained() : std::logic_error("model has not been trained") {}
};

/// Model file with a bad header, unknown version, or malformed payload.
class ModelFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace uml

#endif // UML_CORE_ERROR_HPP
