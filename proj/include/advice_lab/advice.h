#pragma once

// Classical advice constructions: the parity pad for the box problem and
// iterate tables (anchor pairs along the cycles of a permutation) for
// inversion, each usable directly or as an embedded query algorithm.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "advice_lab/classical.h"
#include "advice_lab/common.h"
#include "advice_lab/qsim.h"

namespace advice_lab::advice {

using qsim::Oracle;

// ---------------------------------------------------------------------------
// Parity pad

/// m contiguous groups covering [N]; group g is [boundaries[g], boundaries[g+1]).
/// Earlier groups are one longer when m does not divide N.
struct ParityPad {
  std::size_t m = 0;
  std::vector<std::size_t> boundaries;  // m + 1 fence posts, 0 .. N
  Bits parities;                        // m bits

  std::size_t num_positions() const { return boundaries.empty() ? 0 : boundaries.back(); }
  std::size_t group_of(std::size_t j) const;
  std::size_t group_size(std::size_t g) const { return boundaries[g + 1] - boundaries[g]; }
  std::size_t bit_size() const { return m; }

  bool operator==(const ParityPad&) const = default;
};

std::vector<std::size_t> equal_split(std::size_t n_positions, std::size_t m);

ParityPad parity_preprocess(std::span<const std::uint8_t> x, std::size_t m);

/// Rebuilds a pad from its advice bits (the parities) and the fixed split.
ParityPad parity_pad_from_advice(std::size_t n_positions, const Bits& parities);

struct ParityAnswer {
  std::uint8_t bit = 0;
  std::size_t query_count = 0;
};

/// Reads the other members of j's group through the oracle. The oracle's
/// forbidden index is set to j before any query.
ParityAnswer parity_answer(std::size_t j, const ParityPad& pad, const Oracle& oracle);

/// ceil(N/m) - 1.
std::size_t parity_query_bound(std::size_t n_positions, std::size_t m);

/// The parity strategy as a query algorithm on layout (N, 2, 1); input j,
/// answer bit in the answer register.
qsim::AlgorithmSpec parity_algorithm(const ParityPad& pad);

/// Preprocessing x -> parities and instantiation parities -> algorithm.
qsim::AdvisedAlgorithm parity_scheme(std::size_t n_positions, std::size_t m);

nlohmann::json to_json(const ParityPad& pad);
ParityPad parity_pad_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Iterate tables

struct AnchorPair {
  std::uint32_t start = 0;
  std::uint32_t end = 0;     // f^(stride)(start)
  std::uint32_t stride = 0;  // s, except possibly the last pair of a cycle

  bool operator==(const AnchorPair&) const = default;
};

struct HellmanCycle {
  std::vector<AnchorPair> anchors;
  std::size_t length() const;
  bool operator==(const HellmanCycle&) const = default;
};

struct HellmanTable {
  unsigned n = 0;  // log2 N
  std::size_t s = 1;
  std::vector<HellmanCycle> cycles;

  std::size_t num_positions() const { return std::size_t{1} << n; }
  std::size_t num_entries() const;
  /// Anchor pairs at 2n bits each.
  std::size_t pair_bits() const { return num_entries() * 2 * n; }
  /// One (n+1)-bit cycle length per cycle; strides follow from it.
  std::size_t header_bits() const { return cycles.size() * (n + 1); }

  /// Serialized advice: per cycle, its length then its anchor pairs.
  Bits to_advice() const;
  static HellmanTable from_advice(const Bits& bits, unsigned n, std::size_t s);

  bool operator==(const HellmanTable&) const = default;
};

/// f^(s)(x) by exactly s oracle evaluations. Adds s to *calls when given.
std::uint32_t iterate(const Oracle& f, std::uint32_t x, std::size_t s,
                      std::size_t* calls = nullptr);

/// Cycles in order of their minimum element; anchors every s steps from the
/// minimum, the final pair of each cycle carrying the leftover stride.
HellmanTable hellman_build(const Oracle& f, std::size_t s);

/// Checks stored pairs against f, coverage and the entry-count bound.
bool hellman_table_valid(const HellmanTable& table, const Oracle& f);

struct Inversion {
  std::uint32_t preimage = 0;
  std::size_t oracle_calls = 0;
  std::size_t table_lookups = 0;
};

/// Walks y, f(y), ... to the first anchor end, jumps to its start and walks
/// forward to the predecessor of y. Costs exactly the stride of the segment
/// containing y. Throws std::runtime_error on a walk longer than 2N (corrupt table).
Inversion hellman_invert(std::uint32_t y, const HellmanTable& table, const Oracle& f);

/// The same walk as a classical program that gives up after `budget` oracle
/// calls (outputting its current point). Used for the embedded algorithm,
/// which may run against non-bijective hybrid oracles.
std::unique_ptr<qsim::ClassicalProgram> hellman_program(
    std::shared_ptr<const HellmanTable> table, std::uint32_t y, std::size_t budget);

/// Embedded inverter on layout (N, N, 1) with max_queries = s.
qsim::AlgorithmSpec hellman_algorithm(const HellmanTable& table);

qsim::AdvisedAlgorithm hellman_scheme(std::size_t n_elements, std::size_t s);

/// Advice is the full inverse table (N*n bits); no queries at all.
qsim::AdvisedAlgorithm inverse_table_scheme(std::size_t n_elements);

nlohmann::json to_json(const HellmanTable& table);
HellmanTable hellman_table_from_json(const nlohmann::json& j);

struct TradeoffPoint {
  std::size_t s = 0;
  std::size_t entries = 0;
  std::size_t cycles = 0;
  std::size_t space_bits = 0;   // entries * 2n
  std::size_t header_bits = 0;  // reported separately
  std::size_t worst_calls = 0;  // max over all y
  double mean_calls = 0.0;
  std::size_t lookups_worst = 0;
  bool all_correct = true;

  std::size_t product() const { return space_bits * worst_calls; }
};

/// Builds a table and inverts every y in [N].
TradeoffPoint measure_tradeoff(const Oracle& f, std::size_t s);

}  // namespace advice_lab::advice
