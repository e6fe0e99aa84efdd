#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "advice_lab/qsim.h"

using namespace advice_lab;
using namespace advice_lab::qsim;

namespace {

std::vector<std::uint32_t> shifted(std::size_t n, std::uint32_t by) {
  std::vector<std::uint32_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>((i + by) % n);
  return v;
}

PureState basis_state(const BasisLayout& layout, std::size_t index) {
  std::vector<Amplitude> amps(layout.dimension());
  amps[index] = 1.0;
  return PureState(layout, std::move(amps));
}

}  // namespace

// sin^2((2k+1) asin(1/sqrt N)), evaluated offline.
struct GroverCase {
  std::size_t n;
  std::size_t k;
  double expected;
};

class GroverClosedForm : public ::testing::TestWithParam<GroverCase> {};

TEST_P(GroverClosedForm, SimulationMatchesFrozenValue) {
  const auto [n, k, expected] = GetParam();
  EXPECT_NEAR(grover_closed_form(n, k), expected, 1e-12);
  const auto f = Oracle::permutation(shifted(n, 3));
  for (std::uint32_t y : {0u, static_cast<std::uint32_t>(n - 1)}) {
    const auto res = grover_invert(f, y, k);
    EXPECT_NEAR(res.success_probability, expected, 1e-9);
    EXPECT_EQ(res.trace.num_queries, 2 * k);
    EXPECT_NEAR(res.trace.total_mass(), 2.0 * k, 1e-9);
    EXPECT_EQ(f(res.candidate), y);
  }
}

INSTANTIATE_TEST_SUITE_P(Frozen, GroverClosedForm,
                         ::testing::Values(GroverCase{64, 6, 0.9965856807867991},
                                           GroverCase{4, 1, 1.0},
                                           GroverCase{16, 3, 0.9613189697265625},
                                           GroverCase{256, 12, 0.9999470421032736}));

TEST(Grover, DefaultIterations) {
  EXPECT_EQ(default_grover_iterations(4), 1u);
  EXPECT_EQ(default_grover_iterations(64), 6u);
  EXPECT_EQ(default_grover_iterations(256), 12u);
}

TEST(Layout, IndexAndCoordinatesAgree) {
  const BasisLayout layout(5, 3, 2);
  EXPECT_EQ(layout.dimension(), 30u);
  EXPECT_EQ(layout.index(2, 1, 1), (2 * 3 + 1) * 2 + 1u);
  for (std::size_t i = 0; i < layout.dimension(); ++i) EXPECT_EQ(layout.index(layout.coordinates(i)), i);
}

TEST(State, RejectsUnnormalized) {
  const BasisLayout layout(2, 2, 1);
  EXPECT_THROW(PureState(layout, {1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(PureState(layout, {1.0}), std::invalid_argument);
}

TEST(Oracle, Factories) {
  EXPECT_THROW(Oracle::permutation({0, 0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Oracle::permutation({0, 1, 2}), std::invalid_argument);
  EXPECT_NO_THROW(Oracle::function({0, 0, 1, 2}));
  const auto x = Oracle::bit_string(from_bitstring("0110"), 2);
  EXPECT_EQ(x(1), 1u);
  EXPECT_THROW(x(2), ForbiddenQueryError);
  EXPECT_EQ(x.with_forbidden(std::nullopt)(2), 1u);
}

TEST(Oracle, XorIntoAnswer) {
  const BasisLayout layout(4, 4, 1);
  const auto f = Oracle::permutation({2, 0, 3, 1});
  auto state = basis_state(layout, layout.index(2, 1));
  apply_oracle_in_place(state, f);
  EXPECT_NEAR(std::abs(state[layout.index(2, 1 ^ 3)]), 1.0, 1e-15);
  apply_oracle_in_place(state, f);
  EXPECT_NEAR(std::abs(state[layout.index(2, 1)]), 1.0, 1e-15);
}

TEST(Oracle, ForbiddenMassIsRejected) {
  const BasisLayout layout(4, 2, 1);
  const auto x = Oracle::bit_string(from_bitstring("0101"), 3);
  auto ok = basis_state(layout, layout.index(1, 0));
  EXPECT_NO_THROW(apply_oracle_in_place(ok, x));
  auto bad = basis_state(layout, layout.index(3, 0));
  EXPECT_THROW(apply_oracle_in_place(bad, x), ForbiddenQueryError);
}

TEST(Oracle, DifferenceSet) {
  const auto a = Oracle::bit_string(from_bitstring("0110"));
  const auto b = Oracle::bit_string(from_bitstring("1100"));
  EXPECT_EQ(difference_set(a, b), (std::vector<std::size_t>{0, 2}));
}

TEST(Distances, HandComputed) {
  const BasisLayout layout(2, 1, 1);
  const double r = 1.0 / std::sqrt(2.0);
  const PureState a(layout, {1.0, 0.0});
  const PureState b(layout, {r, r});
  // |a - b|^2 = (1 - r)^2 + r^2 = 2 - sqrt 2
  EXPECT_NEAR(euclidean_distance(a, b), std::sqrt(2.0 - std::sqrt(2.0)), 1e-12);
  const auto pa = measurement_distribution(a, Register::kPosition);
  const auto pb = measurement_distribution(b, Register::kPosition);
  EXPECT_NEAR(tv_distance(pa, pb), 1.0, 1e-12);
}

TEST(Magnitudes, SumToOnePerState) {
  const BasisLayout layout(3, 2, 2);
  std::vector<Amplitude> amps(layout.dimension(), 1.0 / std::sqrt(12.0));
  const PureState s(layout, amps);
  const auto q = query_magnitudes(s);
  ASSERT_EQ(q.size(), 3u);
  for (double v : q) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
}

TEST(Run, QueryBudgetEnforced) {
  AlgorithmSpec alg = grover_inversion_algorithm(8, 1);
  alg.max_queries = 1;
  EXPECT_THROW(run(alg, Oracle::permutation(shifted(8, 1)), 0), std::runtime_error);
}

TEST(Run, ConstantAlgorithmMakesNoQueries) {
  const auto alg = constant_algorithm(BasisLayout(4, 2, 1), Register::kAnswer, 1);
  const auto res = run(alg, Oracle::bit_string(from_bitstring("0000")), 0);
  EXPECT_EQ(res.trace.num_queries, 0u);
  EXPECT_NEAR(output_probability(alg, res.final_state, 1), 1.0, 1e-12);
}

TEST(BoxGrover, AvoidsForbiddenIndexAndFindsOne) {
  const Bits x = from_bitstring("00000100");
  const auto alg = box_grover_algorithm(8, 2);
  const auto res = run(alg, Oracle::bit_string(x, 2), 2);
  EXPECT_EQ(res.trace.totals[2], 0.0);
  EXPECT_NEAR(res.trace.total_mass(), static_cast<double>(res.trace.num_queries), 1e-9);
  // One marked position among the 7 allowed ones.
  EXPECT_GT(output_probability(alg, res.final_state, 5), 0.5);
}

TEST(ReflectOnto, MapsBasisVectorToTarget) {
  const BasisLayout layout(4, 1, 1);
  auto state = basis_state(layout, 0);
  const std::vector<Amplitude> target{0.5, 0.5, 0.5, 0.5};
  reflect_onto(state, 0, target);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(state[i] - target[i]), 0.0, 1e-12);
}

TEST(Grover, ZeroIterationsOnTwoElements) {
  const auto res = grover_invert(Oracle::permutation({1, 0}), 0, 0);
  EXPECT_NEAR(res.success_probability, 0.5, 1e-12);
  EXPECT_EQ(res.trace.num_queries, 0u);
}
