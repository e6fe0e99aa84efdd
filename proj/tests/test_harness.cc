#include <gtest/gtest.h>

#include <cstdlib>

#include "advice_lab/harness.h"

using namespace advice_lab::harness;

namespace {

ExperimentConfig config_for(const std::string& command) {
  ExperimentConfig c;
  c.command = command;
  c.trials = 4;
  c.seed = 42;
  return c;
}

}  // namespace

TEST(Config, HashIgnoresThreadsAndOutput) {
  auto a = config_for("grover");
  auto b = a;
  b.threads = 8;
  b.out = "x.csv";
  b.format = Format::kJson;
  EXPECT_EQ(a.hash(), b.hash());
  b.seed = 43;
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Config, Validation) {
  auto c = config_for("grover");
  c.n = 12;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config_for("box");
  c.m = c.n = 8;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config_for("verify");
  c.suite = "nope";
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config_for("frobnicate");
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Threads, EnvironmentVariable) {
  setenv("ADVICE_LAB_THREADS", "3", 1);
  EXPECT_EQ(threads_from_env(), 3u);
  setenv("ADVICE_LAB_THREADS", "zero", 1);
  EXPECT_EQ(threads_from_env(), 1u);
  unsetenv("ADVICE_LAB_THREADS");
  EXPECT_EQ(threads_from_env(), 1u);
}

TEST(Commands, OutputIndependentOfThreadCount) {
  for (const char* cmd : {"grover", "box", "hellman", "compress", "verify"}) {
    auto c = config_for(cmd);
    if (std::string(cmd) == "box") c.n = 8;
    if (std::string(cmd) == "hellman") c.n = 64;
    auto one = c;
    one.threads = 1;
    auto many = c;
    many.threads = 3;
    EXPECT_EQ(to_csv(run_command(one)), to_csv(run_command(many))) << cmd;
  }
}

TEST(Commands, GroverRowsAndInvariants) {
  auto c = config_for("grover");
  c.n = 64;
  const auto t = run_command(c);
  EXPECT_TRUE(t.invariants_held());
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].size(), t.columns.size());
  EXPECT_EQ(t.rows[0][4], "6");
  EXPECT_EQ(t.rows[0][5], "12");
}

TEST(Commands, JsonMirrorsCsv) {
  const auto t = run_command(config_for("hellman"));
  const auto j = to_json(t);
  ASSERT_EQ(j.size(), t.rows.size());
  EXPECT_EQ(j[0].at("s"), "8");
  EXPECT_EQ(j[0].at("correct_fraction"), "1");
}

TEST(Commands, CompressUsesStrideTwoByDefault) {
  const auto t = run_command(config_for("compress"));
  EXPECT_TRUE(t.invariants_held());
  EXPECT_EQ(t.rows[0][4], "hellman");
  EXPECT_EQ(t.rows[0][6], "2");
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(random_permutation(32, 5), random_permutation(32, 5));
  EXPECT_NE(random_permutation(32, 5), random_permutation(32, 6));
  EXPECT_EQ(random_bits(32, 5), random_bits(32, 5));
  const auto inst = make_swap_instance(17);
  EXPECT_TRUE(inst.oracle_x.size() == 8 || inst.oracle_x.size() == 16);
  const auto [a, b] = make_state_pair(3);
  EXPECT_EQ(a.layout(), b.layout());
}
