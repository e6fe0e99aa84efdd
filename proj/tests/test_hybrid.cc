#include <gtest/gtest.h>

#include <cmath>

#include "advice_lab/advice.h"
#include "advice_lab/hybrid.h"

using namespace advice_lab;
using namespace advice_lab::hybrid;
using qsim::Oracle;

TEST(Words, BitOrder) {
  const Bits bits = from_bitstring("1010");
  EXPECT_EQ(word_from_bits(bits), 0b0101u);
  EXPECT_EQ(bits_from_word(0b0101u, 4), bits);
}

TEST(Collision, FindsPairAgreeingOutsideWindow) {
  const std::vector<Word> members{0b0000, 0b0110, 0b1001, 0b0100};
  const std::vector<std::size_t> window{1, 2};
  const auto [x, y] = collision_in_window(members, 4, window);
  EXPECT_EQ(x, 0b0000u);
  EXPECT_EQ(y, 0b0110u);
  EXPECT_TRUE(has_collision_brute_force(members, window));
}

TEST(Collision, ThrowsWhenNoneExists) {
  const std::vector<Word> members{0b0001, 0b0010};
  const std::vector<std::size_t> window{2, 3};
  EXPECT_FALSE(has_collision_brute_force(members, window));
  EXPECT_THROW(collision_in_window(members, 4, window), std::invalid_argument);
}

TEST(Collision, PigeonholeAlwaysSucceeds) {
  // 2^(n-m) members and a window of m+1 coordinates leave 2^(n-m-1) outside patterns.
  const std::size_t n = 6, m = 2;
  std::vector<Word> members;
  for (Word w = 0; w < (Word{1} << (n - m)); ++w) members.push_back(w * 3 % 64);
  const std::vector<std::size_t> window{0, 3, 5};
  const auto [x, y] = collision_in_window(members, n, window);
  EXPECT_NE(x, y);
  EXPECT_EQ((x ^ y) & ~Word{0b101001}, 0u);
}

TEST(BoxAdapter, TouchesOnlyTheOtherGroupMembers) {
  const Bits x = from_bitstring("10110100");
  const auto alg = advice::parity_algorithm(advice::parity_preprocess(x, 2));
  const auto res = qsim::run(alg, Oracle::bit_string(x, 2), 2);
  const std::vector<double> expected{1, 1, 0, 1, 0, 0, 0, 0};
  for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(res.trace.totals[j], expected[j], 1e-15);
}

TEST(Swapping, IdenticalOraclesGiveZero) {
  const Bits x = from_bitstring("01100001");
  const auto alg = qsim::box_grover_algorithm(8, 1);
  const auto rep = verify_swapping(alg, Oracle::bit_string(x, 0), Oracle::bit_string(x, 0), 0);
  EXPECT_TRUE(rep.delta.empty());
  EXPECT_EQ(rep.actual, 0.0);
  EXPECT_TRUE(rep.holds);
}

TEST(Swapping, GroverPairWithinBound) {
  const auto alg = qsim::grover_inversion_algorithm(8, 2);
  const auto f = Oracle::permutation({1, 2, 3, 4, 5, 6, 7, 0});
  const auto g = Oracle::permutation({1, 2, 3, 4, 5, 6, 0, 7});
  const auto rep = verify_swapping(alg, f, g, 7);
  EXPECT_EQ(rep.delta, (std::vector<std::size_t>{6, 7}));
  EXPECT_EQ(rep.num_queries, 4u);
  EXPECT_GT(rep.actual, 0.0);
  EXPECT_TRUE(rep.holds);
}

TEST(Swapping, OneQueryClassicalRunExceedsUnitConstant) {
  // N = 4, m = 2: groups of two, so one query decides the answer. Flipping
  // the queried bit moves the final basis state to an orthogonal one.
  const auto alg = advice::parity_algorithm(advice::parity_preprocess(from_bitstring("0000"), 2));
  const auto rep = verify_swapping(alg, Oracle::bit_string(from_bitstring("0000"), 0),
                                   Oracle::bit_string(from_bitstring("0100"), 0), 0);
  EXPECT_EQ(rep.num_queries, 1u);
  EXPECT_NEAR(rep.delta_magnitude, 1.0, 1e-15);
  EXPECT_NEAR(rep.bound, 1.0, 1e-15);
  EXPECT_NEAR(rep.actual, std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(rep.holds);
  EXPECT_LE(rep.actual, 2.0 * rep.bound);
}

TEST(TotalVariation, OrthogonalStates) {
  const qsim::BasisLayout layout(2, 1, 1);
  const qsim::PureState a(layout, {1.0, 0.0});
  const qsim::PureState b(layout, {0.0, 1.0});
  const auto rep = verify_tv(a, b);
  EXPECT_NEAR(rep.tv, 2.0, 1e-12);
  EXPECT_NEAR(rep.euclidean, std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(rep.holds);
}

TEST(Partitions, ParityClassesAreEqualSized) {
  const auto parts = enumerate_partitions(4, 2, advice::parity_scheme(4, 2));
  ASSERT_EQ(parts.size(), 4u);
  for (const auto& p : parts) EXPECT_EQ(p.members.size(), 4u);
}

TEST(MagnitudeEstimate, ConstantPopulationIsExact) {
  qsim::QueryTrace trace;
  trace.totals = {0.0, 0.5, 0.5, 0.5, 0.5};
  trace.num_queries = 2;
  const auto est = estimate_mean_magnitude(trace, 0, 50, 3);
  EXPECT_DOUBLE_EQ(est.mean, 0.5);
  EXPECT_DOUBLE_EQ(est.expected, 0.5);
  EXPECT_EQ(est.standard_error, 0.0);
  EXPECT_TRUE(est.within_three_sigma());
}

TEST(BoxExperiment, ThreadCountDoesNotChangeResults) {
  BoxConfig config;
  config.n_positions = 8;
  config.m = 2;
  config.trials = 12;
  const auto scheme = advice::parity_scheme(8, 2);
  const auto one = box_experiment(config, scheme, 1);
  const auto four = box_experiment(config, scheme, 4);
  ASSERT_EQ(one.trials.size(), four.trials.size());
  for (std::size_t t = 0; t < one.trials.size(); ++t) {
    EXPECT_EQ(one.trials[t].x, four.trials[t].x);
    EXPECT_EQ(one.trials[t].y, four.trials[t].y);
    EXPECT_EQ(one.trials[t].swap.actual, four.trials[t].swap.actual);
  }
  EXPECT_EQ(one.skipped, 0u);
}
