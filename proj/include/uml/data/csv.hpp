#ifndef UML_DATA_CSV_HPP
#define UML_DATA_CSV_HPP

#include "uml/core/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace uml::data {

// CSV dialect: comma separator, no header, no quoting, '.' decimal point,
// optional trailing newline. Files hold one point per row; matrices hold one
// point per column, so loading transposes.

/// Throws DataError on a missing file, empty input, ragged rows, non-numeric
/// or non-finite tokens.
Matrix load_matrix(const std::filesystem::path &path);

/// Parses CSV text already in memory. `source` names it in error messages.
Matrix parse_matrix(const std::string &text, const std::string &source = "<memory>");

/// Writes with shortest round-trip formatting, so load_matrix(save_matrix(m)) == m.
void save_matrix(const std::filesystem::path &path, const Matrix &matrix);
std::string format_matrix(const Matrix &matrix);

/// One non-negative integer per line, or a single comma-separated line.
std::vector<std::uint64_t> load_labels(const std::filesystem::path &path);
std::vector<std::uint64_t> parse_labels(const std::string &text,
                                        const std::string &source = "<memory>");

/// One label per line.
void save_labels(const std::filesystem::path &path, const std::vector<std::uint64_t> &labels);
void save_labels(const std::filesystem::path &path, const LabelRow &labels);

} // namespace uml::data

#endif // UML_DATA_CSV_HPP
