#pragma once

// Seeded experiment commands behind the advice_lab CLI.
//
// Seeds: trial i of a run with top-level seed S uses derive_seed(S, i)
// (SplitMix64 of S + golden-ratio * (i + 1)). Trials may run on a thread
// pool; rows are emitted in trial order, so output is identical for any
// thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "advice_lab/qsim.h"

namespace advice_lab::harness {

enum class Format { kCsv, kJson };

struct ExperimentConfig {
  std::string command;  // grover | box | hellman | compress | verify
  std::size_t n = 16;   // N, the number of positions / elements
  std::size_t m = 2;
  std::vector<std::size_t> s_list;  // empty: hellman {8,16,32,64}, compress {2}
  double delta = 0.9;
  double c = 0.001;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::optional<std::size_t> iterations;
  std::string algorithm;  // per-command default when empty
  std::string suite = "all";
  Format format = Format::kCsv;
  std::string out;        // empty: stdout
  std::size_t threads = 1;

  /// Stable text form of every field that affects results (not out/threads/format).
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;
  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> violations;  // invariant failures, empty when all held
  std::vector<std::string> notes;       // summary lines for stderr

  bool invariants_held() const { return violations.empty(); }
};

std::string to_csv(const Table& table);
/// Array of row objects keyed by column name, mirroring the CSV.
nlohmann::ordered_json to_json(const Table& table);
std::string render(const Table& table, Format format);

Table cmd_grover(const ExperimentConfig& config);
Table cmd_box(const ExperimentConfig& config);
Table cmd_hellman(const ExperimentConfig& config);
Table cmd_compress(const ExperimentConfig& config);
Table cmd_verify(const ExperimentConfig& config);

Table run_command(const ExperimentConfig& config);

/// ADVICE_LAB_THREADS when set to a positive integer, otherwise 1.
std::size_t threads_from_env();

// ---- seeded instance generators (shared with the acceptance suite) ----

std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed);
Bits random_bits(std::size_t n, std::uint64_t seed);

struct SwapInstance {
  std::string family;
  qsim::AlgorithmSpec algorithm;
  qsim::Oracle oracle_x;
  qsim::Oracle oracle_y;
  std::uint64_t input = 0;
};

/// One random (algorithm, oracle pair, input) triple at N in {8, 16}, drawn
/// from Grover inversion, iterate-table inversion, box Grover and parity.
SwapInstance make_swap_instance(std::uint64_t seed);

/// Random unit vector over a random small layout; the second state is either
/// independent or a perturbation of the first.
std::pair<qsim::PureState, qsim::PureState> make_state_pair(std::uint64_t seed);

}  // namespace advice_lab::harness
