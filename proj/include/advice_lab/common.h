#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advice_lab {

/// A bit string, one bit per byte (values 0 or 1).
using Bits = std::vector<std::uint8_t>;

/// Renders bits as a '0'/'1' string, bit 0 first.
std::string to_bitstring(std::span<const std::uint8_t> bits);

/// Parses a '0'/'1' string. Throws std::invalid_argument on any other character.
Bits from_bitstring(std::string_view text);

/// Packs bits MSB-first into bytes; the final byte is zero-padded.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
Bits unpack_bits(std::span<const std::uint8_t> bytes, std::size_t num_bits);

bool is_power_of_two(std::uint64_t value);

/// Smallest k with 2^k >= value; 0 for value <= 1.
unsigned ceil_log2(std::uint64_t value);

/// SplitMix64 finalizer. Used for counter-based seed derivation.
std::uint64_t splitmix64(std::uint64_t value);

/// Seed for the `index`-th trial under a top-level seed. Depends only on
/// (seed, index), so serial and parallel executions agree.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_interval(std::uint64_t draw) {
  return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

/// Unbiased draw from [0, bound) by rejection; bound > 0.
template <class Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % bound;
}

/// Runs body(i) for i in [0, count) on up to `threads` worker threads.
/// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace advice_lab
