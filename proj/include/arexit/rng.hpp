// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

/// Counter-based random numbers for reproducible parallel Monte Carlo.
///
/// Each simulated path owns an independent Philox4x32-10 stream: the 64-bit
/// user seed is the key, the path index fills the two high counter words, and
/// a per-path block counter fills the low words. Draws therefore depend only
/// on (seed, path index, position in the path), never on thread scheduling.
///
/// Normal variates come from the Marsaglia polar transform of full-precision
/// uniforms (exact distribution, no inverse-CDF approximation). Any change to
/// the stream layout or the transform must bump kRngVersion.
namespace arexit::mc {

inline constexpr const char* kRngVersion = "philox4x32-10/polar/1";

namespace rng_detail {

inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

inline std::array<std::uint32_t, 4> philox_block(std::uint64_t key,
                                                 std::uint64_t block,
                                                 std::uint64_t stream) {
  std::uint32_t c0 = static_cast<std::uint32_t>(block);
  std::uint32_t c1 = static_cast<std::uint32_t>(block >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(stream);
  std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return {c0, c1, c2, c3};
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace rng_detail

/// Stream of i.i.d. standard normal variates for one (seed, path) pair.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t path_index)
      : key_(seed), path_(path_index) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    for (;;) {
      const auto r = rng_detail::philox_block(key_, block_++, path_);
      const double x = 2.0 * rng_detail::to_unit(r[0], r[1]) - 1.0;
      const double y = 2.0 * rng_detail::to_unit(r[2], r[3]) - 1.0;
      const double s = x * x + y * y;
      if (s >= 1.0 || s <= 0.0) continue;
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      spare_ = y * f;
      has_spare_ = true;
      return x * f;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t path_;
  std::uint64_t block_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace arexit::mc
