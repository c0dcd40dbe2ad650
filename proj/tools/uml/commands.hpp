#ifndef UML_TOOLS_COMMANDS_HPP
#define UML_TOOLS_COMMANDS_HPP

#include "CLI11.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace uml::cli {

/// Bad flags or flag combinations; exits with status 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// What the command that ran reports on stderr after it finishes.
struct RunOutcome {
  std::string command;
  std::vector<std::pair<std::string, std::string>> metrics;

  void add(const std::string &key, double value);
  void add(const std::string &key, std::size_t value);
  void add(const std::string &key, const std::string &value);
};

void register_commands(CLI::App &app, RunOutcome &outcome);

} // namespace uml::cli

#endif // UML_TOOLS_COMMANDS_HPP
