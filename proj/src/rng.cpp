#include "rng.hpp"

#include <limits>

namespace metadisc {

std::uint64_t uniformBelow(Engine& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

std::size_t sampleWeighted(std::span<const double> weights, double total, Engine& rng) {
  const double target = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = i;
    if (target < acc) return i;
  }
  // Rounding can leave target == acc at the very end.
  return last;
}

}  // namespace metadisc
