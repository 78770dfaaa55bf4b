#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ffbm {

using Rng = std::mt19937_64;

// Deterministic child stream derived from a master seed and a stream name
// (e.g. "b-chain", "theta-chain", "split", "generator") plus an index, so
// that every consumer of randomness is independent of call order.
inline Rng substream(std::uint64_t master_seed, std::string_view name,
                     std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace ffbm
