#pragma once

#include <cstdint>
#include <random>

namespace swnet {

using Rng = std::mt19937_64;

// Derives an independent stream from a base seed and a stream tag
// (splitmix64 finalizer), so sub-experiments never share a generator state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

// Uniform index in [0, n). n must be positive.
template <typename Engine>
std::size_t uniform_index(Engine& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace swnet
