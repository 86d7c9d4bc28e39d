#pragma once

#include <cstdint>
#include <random>

#include "endlab/group.hpp"

namespace endlab {

// Stream tags keep independent consumers of one master seed apart.
enum class Stream : std::uint64_t {
  Walk = 1,
  Bank = 2,
  Sampling = 3,
  Property = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index) {
  return mix64(mix64(master ^ mix64(static_cast<std::uint64_t>(stream))) + index);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index) {
  return Rng(derive_seed(master, stream, index));
}

// 53-bit uniform on [0,1); identical on every platform, unlike
// std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

}  // namespace endlab
