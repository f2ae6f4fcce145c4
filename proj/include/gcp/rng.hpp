#pragma once

#include <array>
#include <cstdint>

namespace gcp {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// A pure function of (key, counter): any draw can be reproduced without
/// replaying a stream, which keeps parallel sweeps order-independent.
using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxBlock philox4x32(PhiloxBlock ctr, PhiloxKey key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

struct DrawCounter {
  std::uint64_t item = 0;
  std::uint32_t stream_a = 0;
  std::uint32_t stream_b = 0;
};

inline PhiloxBlock philox_block(std::uint64_t seed, DrawCounter c) {
  return philox4x32({static_cast<std::uint32_t>(c.item), static_cast<std::uint32_t>(c.item >> 32),
                     c.stream_a, c.stream_b},
                    {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
}

// 53-bit double in [0, 1) from two 32-bit words.
constexpr double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t{hi} << 32 | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

inline double uniform_at(std::uint64_t seed, DrawCounter c) {
  const auto b = philox_block(seed, c);
  return to_unit(b[0], b[1]);
}

}  // namespace gcp
