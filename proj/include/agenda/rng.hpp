// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace agenda::rng {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is addressed by (master_seed, trial_index, family); identical
/// addresses yield bit-identical draw sequences on every platform, worker
/// count and evaluation order. Trials therefore parallelize freely, and
/// reusing a master seed across design points gives common random numbers.
/// The family word separates independent stream groups (0 = scan/default,
/// 1 = validation).
class Stream {
 public:
  Stream(std::uint64_t master_seed, std::uint64_t trial_index,
         std::uint32_t family = 0)
      : key_{static_cast<std::uint32_t>(master_seed),
             static_cast<std::uint32_t>(master_seed >> 32)},
        base_{static_cast<std::uint32_t>(trial_index),
              static_cast<std::uint32_t>(trial_index >> 32), family, 0} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return block_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform double in [0,1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in {0,...,bound-1}, unbiased (Lemire with rejection).
  std::uint32_t uniform_int(std::uint32_t bound) {
    std::uint64_t prod = static_cast<std::uint64_t>(next_u32()) * bound;
    auto lo = static_cast<std::uint32_t>(prod);
    if (lo < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (lo < threshold) {
        prod = static_cast<std::uint64_t>(next_u32()) * bound;
        lo = static_cast<std::uint32_t>(prod);
      }
    }
    return static_cast<std::uint32_t>(prod >> 32);
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  void refill() {
    std::array<std::uint32_t, 4> x = base_;
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
      x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1],
           static_cast<std::uint32_t>(p0)};
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    block_ = x;
    ++base_[3];  // block counter within the stream
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> base_;
  std::array<std::uint32_t, 4> block_{};
  int pos_ = 4;
};

}  // namespace agenda::rng
