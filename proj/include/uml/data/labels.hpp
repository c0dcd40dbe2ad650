#ifndef UML_DATA_LABELS_HPP
#define UML_DATA_LABELS_HPP

#include "uml/core/types.hpp"

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace uml::data {

struct EncodedLabels;

/// Bijection between raw label tokens and dense class indices.
class LabelEncoding {
public:
  LabelEncoding() = default;

  std::size_t numClasses() const noexcept { return backward_.size(); }

  /// Dense index of `raw`; throws InvalidArgument for unseen tokens.
  std::size_t encode(std::uint64_t raw) const;
  /// Raw token of dense index `index`; throws InvalidArgument when out of range.
  std::uint64_t decode(std::size_t index) const;

  std::vector<std::uint64_t> decode(const LabelRow &labels) const;

  const std::vector<std::uint64_t> &tokens() const noexcept { return backward_; }

private:
  friend EncodedLabels encode_labels(const std::vector<std::uint64_t> &raw);

  std::unordered_map<std::uint64_t, std::size_t> forward_;
  std::vector<std::uint64_t> backward_;
};

struct EncodedLabels {
  LabelRow labels;
  std::size_t numClasses = 0;
  LabelEncoding encoding;
};

/// Dense indices in order of first appearance. Throws InvalidArgument on empty input.
EncodedLabels encode_labels(const std::vector<std::uint64_t> &raw);

/// Checks every label against numClasses; throws InvalidArgument otherwise.
void check_labels(const LabelRow &labels, std::size_t numClasses);

} // namespace uml::data

#endif // UML_DATA_LABELS_HPP
