#include <gtest/gtest.h>

#include <random>

#include "advice_lab/common.h"

using namespace advice_lab;

TEST(Bits, BitstringRoundTrip) {
  const Bits bits = from_bitstring("10110100");
  ASSERT_EQ(bits.size(), 8u);
  EXPECT_EQ(bits[0], 1);
  EXPECT_EQ(bits[1], 0);
  EXPECT_EQ(to_bitstring(bits), "10110100");
  EXPECT_THROW(from_bitstring("10a"), std::invalid_argument);
}

TEST(Bits, PackIsMsbFirst) {
  const Bits bits = from_bitstring("1011010011");
  const auto bytes = pack_bits(bits);
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], 0xB4);
  EXPECT_EQ(bytes[1], 0xC0);
  EXPECT_EQ(unpack_bits(bytes, bits.size()), bits);
}

TEST(Integers, Log2Helpers) {
  EXPECT_TRUE(is_power_of_two(1));
  EXPECT_TRUE(is_power_of_two(1024));
  EXPECT_FALSE(is_power_of_two(0));
  EXPECT_FALSE(is_power_of_two(12));
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(ceil_log2(1024), 10u);
}

TEST(Seeds, SplitMixReferenceValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Seeds, UniformBelowStaysInRange) {
  std::mt19937_64 rng(5);
  std::vector<int> hits(7);
  for (int i = 0; i < 7000; ++i) ++hits[uniform_below(rng, 7)];
  for (int h : hits) EXPECT_GT(h, 800);
  for (int i = 0; i < 100; ++i) {
    const double u = unit_interval(rng());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<int> seen(1000);
  parallel_for(seen.size(), 4, [&](std::size_t i) { seen[i] += 1; });
  for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}
