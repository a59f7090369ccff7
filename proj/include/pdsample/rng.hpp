#pragma once

#include <array>
#include <cstdint>

namespace pdsample {

/// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

/// Counter-based stream: the value at (seed, lane, counter) depends on nothing
/// else, so rows of a batch can be produced in any order or thread.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t lane = 0;
  std::uint64_t counter = 0;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_double();
  /// Uniform on {0, ..., bound-1}; bound > 0.
  std::uint64_t next_below(std::uint64_t bound);
  /// Uniform integer on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform real on [lo, hi).
  double uniform_real(double lo, double hi);

  RngStream with_lane(std::uint64_t l) const { return {seed, l, 0}; }
};

/// SplitMix64 finalizer, used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace pdsample
