#include "uml/data/labels.hpp"

#include "uml/core/error.hpp"

#include <string>

namespace uml::data {

std::size_t LabelEncoding::encode(std::uint64_t raw) const {
  const auto it = forward_.find(raw);
  if (it == forward_.end())
    throw InvalidArgument("unknown label token " + std::to_string(raw));
  return it->second;
}

std::uint64_t LabelEncoding::decode(std::size_t index) const {
  if (index >= backward_.size())
    throw InvalidArgument("class index " + std::to_string(index) + " out of range");
  return backward_[index];
}

std::vector<std::uint64_t> LabelEncoding::decode(const LabelRow &labels) const {
  std::vector<std::uint64_t> raw;
  raw.reserve(static_cast<std::size_t>(labels.size()));
  for (const std::size_t label : labels)
    raw.push_back(decode(label));
  return raw;
}

EncodedLabels encode_labels(const std::vector<std::uint64_t> &raw) {
  if (raw.empty())
    throw InvalidArgument("encode_labels: empty input");
  EncodedLabels out;
  out.labels.resize(static_cast<Eigen::Index>(raw.size()));
  LabelEncoding &enc = out.encoding;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto [it, inserted] = enc.forward_.try_emplace(raw[i], enc.backward_.size());
    if (inserted)
      enc.backward_.push_back(raw[i]);
    out.labels(static_cast<Eigen::Index>(i)) = it->second;
  }
  out.numClasses = enc.backward_.size();
  return out;
}

void check_labels(const LabelRow &labels, std::size_t numClasses) {
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels(i) >= numClasses)
      throw InvalidArgument("label " + std::to_string(labels(i)) + " at position " + std::to_string(i) +
                            " is outside [0, " + std::to_string(numClasses) + ")");
}

} // namespace uml::data
