#pragma once

#include <cstdint>

namespace steiner {

/// SplitMix64 step. Used to spin independent sub-seeds off one master seed
/// so adding a consumer never shifts the stream another consumer sees.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
inline double u53(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace steiner
