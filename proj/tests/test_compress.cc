#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "advice_lab/advice.h"
#include "advice_lab/compress.h"

using namespace advice_lab;
using namespace advice_lab::compress;

namespace {

std::uint64_t fact(std::uint64_t n) { return n <= 1 ? 1 : n * fact(n - 1); }

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t bits_for(std::uint64_t count) {
  std::size_t b = 0;
  while ((std::uint64_t{1} << b) < count) ++b;
  return b;
}

Oracle random_perm(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  std::shuffle(v.begin(), v.end(), rng);
  return Oracle::permutation(std::move(v));
}

}  // namespace

TEST(Codec, SixChooseThreeInColexOrder) {
  std::vector<std::vector<std::uint32_t>> subsets;
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = a + 1; b < 6; ++b)
      for (std::uint32_t c = b + 1; c < 6; ++c) subsets.push_back({a, b, c});
  std::sort(subsets.begin(), subsets.end(), [](const auto& l, const auto& r) {
    return std::lexicographical_compare(l.rbegin(), l.rend(), r.rbegin(), r.rend());
  });
  ASSERT_EQ(subsets.size(), 20u);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    EXPECT_EQ(rank_set(subsets[i], 6), i);
    EXPECT_EQ(unrank_set(i, 6, 3), subsets[i]);
  }
  EXPECT_THROW(unrank_set(20, 6, 3), std::out_of_range);
  const std::vector<std::uint32_t> dup{1, 1, 2};
  EXPECT_THROW(rank_set(dup, 6), std::invalid_argument);
}

TEST(Codec, FourFactorialInLexOrder) {
  std::vector<std::uint32_t> perm{0, 1, 2, 3};
  std::size_t i = 0;
  do {
    EXPECT_EQ(rank_perm(perm), i);
    EXPECT_EQ(unrank_perm(i, 4), perm);
    ++i;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(i, 24u);
  EXPECT_THROW(unrank_perm(24, 4), std::out_of_range);
}

TEST(Codec, BigValues) {
  EXPECT_EQ(binomial(64, 32), BigInt("1832624140942590534"));
  EXPECT_EQ(factorial(25), BigInt("15511210043330985984000000"));
  EXPECT_EQ(index_bits(1), 0u);
  EXPECT_EQ(index_bits(2), 1u);
  EXPECT_EQ(index_bits(factorial(16)), 45u);
  EXPECT_NEAR(log2_factorial(16), std::log2(20922789888000.0), 1e-9);
}

TEST(Serialization, Base64Vectors) {
  const auto enc = [](std::string s) {
    return base64_encode(std::vector<std::uint8_t>(s.begin(), s.end()));
  };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
  const auto back = base64_decode("Zm8=");
  EXPECT_EQ(std::string(back.begin(), back.end()), "fo");
  EXPECT_THROW(base64_decode("Zm8"), std::invalid_argument);
}

TEST(Serialization, BigIntBytes) {
  EXPECT_EQ(bigint_to_bytes(0), (std::vector<std::uint8_t>{0, 0, 0, 0}));
  EXPECT_EQ(bigint_to_bytes(0x1234), (std::vector<std::uint8_t>{0, 0, 0, 2, 0x12, 0x34}));
  const BigInt big = factorial(30);
  EXPECT_EQ(bigint_from_bytes(bigint_to_bytes(big)), big);
  EXPECT_THROW(bigint_from_bytes(std::vector<std::uint8_t>{0, 0, 0, 3, 1}), std::invalid_argument);
}

TEST(Params, Validation) {
  CompressionParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_TRUE(p.decoding_certain());
  p.c = 0.01;  // sqrt(c) = 0.1 > 1/24
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.c = 0.001;
  p.delta = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  CompressionParams q;
  EXPECT_NEAR(q.good_set_margin(), 0.45 - 8100.0, 1e-9);
  EXPECT_FALSE(q.good_set_margin_positive());
}

TEST(SampleR, RateAndDeterminism) {
  EXPECT_EQ(sample_R(64, 0.5, 1, 9), sample_R(64, 0.5, 1, 9));
  EXPECT_THROW(sample_R(64, 0.5, 0, 9), std::invalid_argument);
  std::size_t total = 0;
  for (std::uint64_t s = 0; s < 200; ++s) total += sample_R(64, 0.5, 1, s).size();
  EXPECT_NEAR(static_cast<double>(total) / 200.0, 32.0, 2.0);
  const auto all = sample_R(8, 1.0, 1, 0);
  EXPECT_EQ(all.size(), 8u);
}

TEST(Encoding, IdentityNFourRoundTrip) {
  const auto f = Oracle::permutation({0, 1, 2, 3});
  const auto scheme = advice::inverse_table_scheme(4);
  const std::vector<std::uint32_t> r{0, 1, 2, 3};
  CompressionParams params;
  const auto res = encode(f, scheme, r, params);
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.good, r);
  const auto& enc = *res.encoding;
  EXPECT_EQ(enc.good_count, 4u);
  EXPECT_EQ(enc.r_size, 4u);
  // 8 advice bits + 2 + 2 count bits; every rank ranges over a single value.
  EXPECT_EQ(enc.logical_bits, 12u);
  const auto decoded = decode(enc, r, scheme, params);
  EXPECT_EQ(decoded, (std::vector<std::uint32_t>{0, 1, 2, 3}));
}

TEST(Encoding, LengthIdentityAgainstDirectCount) {
  const std::size_t n = 16;
  const auto scheme = advice::hellman_scheme(n, 2);
  CompressionParams params;
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto f = random_perm(n, seed);
    const auto r = sample_R(n, 0.9, 2, seed + 100);
    const auto res = encode(f, scheme, r, params);
    if (!res.ok()) continue;
    const auto& enc = *res.encoding;
    const std::size_t rs = r.size(), g = enc.good_count;
    const std::size_t direct = enc.advice.size() + 2 * bits_for(n) + bits_for(choose(n, rs)) +
                               bits_for(fact(n - rs)) + bits_for(choose(rs, g)) + bits_for(fact(rs - g));
    EXPECT_EQ(enc.logical_bits, direct);
    EXPECT_EQ(logical_bit_length(n, enc.advice.size(), rs, g), direct);
    EXPECT_LE(static_cast<double>(enc.logical_bits), length_bound(n, enc.advice.size(), g));
    EXPECT_EQ(decode(enc, r, scheme, params), std::vector<std::uint32_t>(f.values().begin(), f.values().end()));
    ++checked;
  }
  EXPECT_GT(checked, 30u);
}

TEST(Encoding, JsonEnvelopeRoundTrip) {
  const auto f = random_perm(16, 3);
  const auto scheme = advice::hellman_scheme(16, 2);
  const auto r = sample_R(16, 0.9, 2, 4);
  const auto res = encode(f, scheme, r, CompressionParams{});
  ASSERT_TRUE(res.ok());
  const auto j = to_json(*res.encoding);
  for (const char* key : {"S", "good_count", "r_size", "ranks", "advice", "logical_bits"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const char* key : {"fR", "outer", "fG", "inner"}) EXPECT_TRUE(j.at("ranks").contains(key)) << key;
  EXPECT_EQ(j.at("S"), res.encoding->advice.size());
  EXPECT_EQ(encoding_from_json(j), *res.encoding);
}

TEST(Encoding, CorruptRankRejected) {
  const auto f = random_perm(16, 5);
  const auto scheme = advice::hellman_scheme(16, 2);
  const auto r = sample_R(16, 0.9, 2, 6);
  auto res = encode(f, scheme, r, CompressionParams{});
  ASSERT_TRUE(res.ok());
  auto enc = *res.encoding;
  enc.fr_rank = binomial(16, enc.r_size);
  EXPECT_THROW(decode(enc, r, scheme, CompressionParams{}), DecodeError);
}

TEST(HybridOracle, ConstantOnR) {
  const std::vector<std::uint32_t> known{3, 0, 2, 1};
  const std::vector<std::uint32_t> r{1, 2};
  const auto h = build_h(known, r, 1);
  EXPECT_EQ(std::vector<std::uint32_t>(h.values().begin(), h.values().end()),
            (std::vector<std::uint32_t>{3, 1, 1, 1}));
}

TEST(HybridOracle, HellmanGoodElementsAreExactlyClose) {
  const auto f = random_perm(16, 8);
  const auto scheme = advice::hellman_scheme(16, 2);
  const auto alg = scheme.instantiate(scheme.preprocess(f));
  const auto r = sample_R(16, 0.9, 2, 12);
  for (auto x : good_set(f, alg, r, CompressionParams{})) {
    EXPECT_LE(hybrid_distance(f, alg, r, x), std::sqrt(0.001) + 1e-9);
  }
}

TEST(Counting, LogForm) {
  const auto ok = counting_check(10.0, 10.0, 0.5);
  EXPECT_TRUE(ok.holds);
  EXPECT_NEAR(ok.slack_bits, 1.0, 1e-12);
  EXPECT_FALSE(counting_check(10.0, 8.0, 0.8).holds);
}

TEST(Counting, InstanceTradeoff) {
  const auto t = instance_tradeoff(16, 10, 3, 0.5, 50);
  EXPECT_NEAR(t.lhs_bits, -1.0 + std::log2(20922789888000.0) - 2.0, 1e-9);
  EXPECT_DOUBLE_EQ(t.rhs_bits, 50.0);
  EXPECT_DOUBLE_EQ(t.t2s, 90.0);
  EXPECT_DOUBLE_EQ(t.eps_n, 8.0);
}

TEST(Events, ZeroMagnitudesMakeBCertain) {
  const std::vector<double> q(32, 0.0);
  const auto ev = event_frequencies(q, 5, 0.25, 0.01, 4000, 1);
  EXPECT_DOUBLE_EQ(ev.p_b, 1.0);
  EXPECT_DOUBLE_EQ(ev.p_ab, ev.p_a);
  EXPECT_NEAR(ev.p_a, 0.25, 0.03);
  EXPECT_TRUE(ev.independent_within_three_sigma());
}
