#pragma once

// Empirical checks of the hybrid-argument bounds and the box-problem
// experiment built on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "advice_lab/qsim.h"

namespace advice_lab::hybrid {

using qsim::AlgorithmSpec;
using qsim::Oracle;
using qsim::PureState;

/// Strings of length n <= 64 stored as masks; bit p of the mask is coordinate p.
using Word = std::uint64_t;

Word word_from_bits(std::span<const std::uint8_t> bits);
Bits bits_from_word(Word w, std::size_t n);

/// Two members of D that agree outside `window`. Buckets D by the
/// coordinates outside the window and returns the first bucket collision in
/// the order of D. Throws std::invalid_argument if no pair exists.
std::pair<Word, Word> collision_in_window(std::span<const Word> members, std::size_t n,
                                          std::span<const std::size_t> window);

/// Quadratic scan used as an independent cross-check.
bool has_collision_brute_force(std::span<const Word> members, std::span<const std::size_t> window);

struct SwapReport {
  double bound = 0.0;   // sqrt(T * sum_{j in delta} q_j(x)), T = queries of the x-run
  double actual = 0.0;  // ||phi_x - phi_y||
  std::vector<std::size_t> delta;
  std::size_t num_queries = 0;
  double delta_magnitude = 0.0;
  std::vector<double> magnitudes_x;  // q_j(x) for every j
  bool holds = false;
};

SwapReport verify_swapping(const AlgorithmSpec& alg, const Oracle& oracle_x,
                           const Oracle& oracle_y, std::uint64_t input);

struct TvReport {
  double tv = 0.0;
  double euclidean = 0.0;
  double bound = 0.0;  // 4 * euclidean
  bool holds = false;
};

TvReport verify_tv(const PureState& a, const PureState& b,
                   qsim::Register reg = qsim::Register::kFull);

/// D_alpha for one advice string: every N-bit string whose advice is alpha.
struct AdvicePartition {
  std::size_t advice_bits = 0;
  Bits alpha;
  std::vector<Word> members;
};

/// Enumerates all 2^N strings once and groups them by advice. N <= 12.
std::vector<AdvicePartition> enumerate_partitions(std::size_t n_positions, std::size_t m,
                                                  const qsim::AdvisedAlgorithm& scheme);

struct MagnitudeEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double expected = 0.0;  // T / (N - 1)
  std::size_t samples = 0;

  /// |mean - expected| <= 3 standard errors (exact match when the spread is zero).
  bool within_three_sigma() const;
};

/// Mean of q_z over z drawn uniformly from positions other than `forbidden`.
MagnitudeEstimate estimate_mean_magnitude(const qsim::QueryTrace& trace, std::size_t forbidden,
                                          std::size_t samples, std::uint64_t seed);

struct BoxTrial {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Bits alpha;
  std::size_t class_size = 0;
  bool skipped = false;  // |D_alpha| < 2^(N-m)
  std::size_t forbidden = 0;
  std::vector<std::size_t> window;
  Word x = 0;
  Word y = 0;
  SwapReport swap;
  double window_magnitude = 0.0;  // sum over z in window of q_z(x)
  double distance_bound = 0.0;    // T * sqrt((m+1)/(N-1))
  MagnitudeEstimate magnitude;
};

struct BoxStatistics {
  std::size_t n_positions = 0;
  std::size_t m = 0;
  std::vector<BoxTrial> trials;
  std::size_t skipped = 0;
  std::size_t swaps_held = 0;
  double max_distance = 0.0;
  double magnitude_mean = 0.0;      // pooled over all sampled z
  double magnitude_expected = 0.0;  // pooled T/(N-1)
};

struct BoxConfig {
  std::size_t n_positions = 8;
  std::size_t m = 2;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t magnitude_samples = 100;
};

/// Per trial: draw x, take its advice class, pick j and a window of m+1
/// indices, find a colliding pair in the class and compare the two runs.
/// Trials depend only on (seed, trial index) and may run in parallel.
BoxStatistics box_experiment(const BoxConfig& config, const qsim::AdvisedAlgorithm& scheme,
                             std::size_t threads = 1);

}  // namespace advice_lab::hybrid
