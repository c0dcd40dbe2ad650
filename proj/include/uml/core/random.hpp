#ifndef UML_CORE_RANDOM_HPP
#define UML_CORE_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace uml {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling on the raw engine output,
/// so results do not depend on the standard library's distribution code.
inline std::size_t uniform_index(Rng &rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw > limit);
  return static_cast<std::size_t>(draw % bound);
}

/// Uniform real in [0, 1) from the top 53 bits of one draw.
inline double uniform_unit(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle of 0..n-1.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, Rng &rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[uniform_index(rng, i)]);
  return order;
}

} // namespace uml

#endif // UML_CORE_RANDOM_HPP
