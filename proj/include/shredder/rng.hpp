#pragma once

#include <cstdint>

namespace shredder {

/// SplitMix64 (Steele, Lea & Flood 2014).
///
/// The algorithm is pinned so that random barrier arrays can be reproduced
/// bit-for-bit by other implementations:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// uniform() maps the top 53 bits onto [0, 1): (z >> 11) * 2^-53.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();

private:
  std::uint64_t state_;
};

} // namespace shredder
