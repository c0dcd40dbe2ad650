#include "commands.hpp"

#include "uml/classifiers/model_io.hpp"
#include "uml/core/error.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

void report(const uml::cli::RunOutcome &outcome, double seconds, int status) {
  if (outcome.command.empty())
    return;
  std::fprintf(stderr, "uml %s: exit=%d elapsed=%.3fs", outcome.command.c_str(), status, seconds);
  for (const auto &[key, value] : outcome.metrics)
    std::fprintf(stderr, " %s=%s", key.c_str(), value.c_str());
  std::fputc('\n', stderr);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Machine learning toolkit: classifiers, neighbor search, optimizers and clustering.", "uml"};
  app.set_version_flag("--version", std::string("uml ") + UML_VERSION);
  app.require_subcommand(1);
  app.fallthrough(false);

  uml::cli::RunOutcome outcome;
  uml::cli::register_commands(app, outcome);

  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    status = app.exit(e) == 0 ? kOk : kUsageError;
    return status;
  } catch (const uml::cli::UsageError &e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    status = kUsageError;
  } catch (const uml::ModelFormatError &e) {
    std::cerr << "error: " << e.what() << '\n';
    status = kUsageError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    status = kRuntimeError;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report(outcome, elapsed.count(), status);
  return status;
}
