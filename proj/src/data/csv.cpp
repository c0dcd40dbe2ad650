#include "uml/data/csv.hpp"

#include "uml/core/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace uml::data {
namespace {

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
    throw DataError(path.string(), 0, "read failure");
  return buffer.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Splits into lines, dropping a single trailing newline. Empty lines at the
// very end are ignored; empty lines elsewhere are kept so callers can reject them.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty())
    lines.pop_back();
  return lines;
}

template <typename Fn>
std::size_t for_each_field(std::string_view line, Fn &&fn) {
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    fn(trim(line.substr(start, end - start)), count++);
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return count;
}

double parse_real(std::string_view token, const std::string &source, std::size_t line) {
  if (token.empty())
    throw DataError(source, line, "empty field");
  if (token.front() == '+')
    token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw DataError(source, line, "non-numeric token '" + std::string(token) + "'");
  if (!std::isfinite(value))
    throw DataError(source, line, "non-finite value '" + std::string(token) + "'");
  return value;
}

std::uint64_t parse_label(std::string_view token, const std::string &source, std::size_t line) {
  if (token.empty())
    throw DataError(source, line, "empty label");
  if (token.front() == '-')
    throw DataError(source, line, "negative label '" + std::string(token) + "'");
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw DataError(source, line, "non-integer label '" + std::string(token) + "'");
  return value;
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw DataError(path.string(), 0, "cannot open file for writing");
  out << text;
  if (!out)
    throw DataError(path.string(), 0, "write failure");
}

void append_real(std::string &out, double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

} // namespace

Matrix parse_matrix(const std::string &text, const std::string &source) {
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty())
    throw DataError(source, 0, "empty input");

  std::vector<double> values;
  std::size_t numDims = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineNo = i + 1;
    if (trim(lines[i]).empty())
      throw DataError(source, lineNo, "empty line");
    const std::size_t fields = for_each_field(lines[i], [&](std::string_view token, std::size_t) {
      values.push_back(parse_real(token, source, lineNo));
    });
    if (i == 0)
      numDims = fields;
    else if (fields != numDims)
      throw DataError(source, lineNo,
                      "ragged row: expected " + std::to_string(numDims) + " fields, found " +
                          std::to_string(fields));
  }

  // Row-major file contents map directly onto a column-major dims x points matrix.
  return Eigen::Map<const Matrix>(values.data(), static_cast<Eigen::Index>(numDims),
                                  static_cast<Eigen::Index>(lines.size()));
}

Matrix load_matrix(const std::filesystem::path &path) {
  return parse_matrix(read_file(path), path.string());
}

std::string format_matrix(const Matrix &matrix) {
  std::string out;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      if (i > 0)
        out.push_back(',');
      append_real(out, matrix(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

void save_matrix(const std::filesystem::path &path, const Matrix &matrix) {
  write_file(path, format_matrix(matrix));
}

std::vector<std::uint64_t> parse_labels(const std::string &text, const std::string &source) {
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty())
    throw DataError(source, 0, "empty input");

  std::vector<std::uint64_t> labels;
  if (lines.size() == 1) {
    for_each_field(lines[0], [&](std::string_view token, std::size_t) {
      labels.push_back(parse_label(token, source, 1));
    });
    return labels;
  }
  labels.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view token = trim(lines[i]);
    if (token.find(',') != std::string_view::npos)
      throw DataError(source, i + 1, "expected one label per line");
    labels.push_back(parse_label(token, source, i + 1));
  }
  return labels;
}

std::vector<std::uint64_t> load_labels(const std::filesystem::path &path) {
  return parse_labels(read_file(path), path.string());
}

void save_labels(const std::filesystem::path &path, const std::vector<std::uint64_t> &labels) {
  std::string out;
  for (const std::uint64_t label : labels)
    out += std::to_string(label) + '\n';
  write_file(path, out);
}

void save_labels(const std::filesystem::path &path, const LabelRow &labels) {
  std::vector<std::uint64_t> raw(labels.begin(), labels.end());
  save_labels(path, raw);
}

} // namespace uml::data
