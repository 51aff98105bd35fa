#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace metadisc {

// mt19937_64 output is fixed by the standard; the helpers below replace the
// std:: distributions, whose output is implementation-defined, so seeded runs
// are bit-identical across standard libraries.
using Engine = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// FNV-1a, used to turn stream names into seed-derivation tags.
constexpr std::uint64_t streamTag(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Order-sensitive hash of (master, parts...) into a child seed.
constexpr std::uint64_t deriveSeed(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

inline Engine makeEngine(std::uint64_t seed) { return Engine(seed); }

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n); n must be positive. Rejection sampling on the
// largest multiple of n, so the result is exactly uniform.
std::uint64_t uniformBelow(Engine& rng, std::uint64_t n);

// Index drawn with probability weights[i] / total. `total` must be the sum of
// the (non-negative) weights and positive. Consumes exactly one draw.
std::size_t sampleWeighted(std::span<const double> weights, double total, Engine& rng);

}  // namespace metadisc
